def materials_glossy_wood(nw):
    # shader nodes for glossy wood
    out = nw.new_node("Group Output")
    return out
