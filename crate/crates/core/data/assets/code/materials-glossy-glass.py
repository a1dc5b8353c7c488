def materials_glossy_glass(nw):
    # shader nodes for glossy glass
    out = nw.new_node("Group Output")
    return out
