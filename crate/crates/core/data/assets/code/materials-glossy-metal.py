def materials_glossy_metal(nw):
    # shader nodes for glossy metal
    out = nw.new_node("Group Output")
    return out
