def materials_polished_tile(nw):
    # shader nodes for polished tile
    out = nw.new_node("Group Output")
    return out
