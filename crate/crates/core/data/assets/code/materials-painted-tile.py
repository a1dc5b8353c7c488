def materials_painted_tile(nw):
    # shader nodes for painted tile
    out = nw.new_node("Group Output")
    return out
