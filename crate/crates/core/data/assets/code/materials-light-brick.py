def materials_light_brick(nw):
    # shader nodes for light brick
    out = nw.new_node("Group Output")
    return out
