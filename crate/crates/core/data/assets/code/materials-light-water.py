def materials_light_water(nw):
    # shader nodes for light water
    out = nw.new_node("Group Output")
    return out
