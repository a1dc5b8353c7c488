def materials_glossy_mud(nw):
    # shader nodes for glossy mud
    out = nw.new_node("Group Output")
    return out
