def materials_weathered_tile(nw):
    # shader nodes for weathered tile
    out = nw.new_node("Group Output")
    return out
