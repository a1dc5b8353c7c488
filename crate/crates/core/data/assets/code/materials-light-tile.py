def materials_light_tile(nw):
    # shader nodes for light tile
    out = nw.new_node("Group Output")
    return out
