def materials_light_stone(nw):
    # shader nodes for light stone
    out = nw.new_node("Group Output")
    return out
