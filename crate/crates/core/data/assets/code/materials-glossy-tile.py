def materials_glossy_tile(nw):
    # shader nodes for glossy tile
    out = nw.new_node("Group Output")
    return out
