def materials_glossy_stone(nw):
    # shader nodes for glossy stone
    out = nw.new_node("Group Output")
    return out
