def materials_rough_tile(nw):
    # shader nodes for rough tile
    out = nw.new_node("Group Output")
    return out
