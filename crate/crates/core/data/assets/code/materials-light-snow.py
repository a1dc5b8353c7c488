def materials_light_snow(nw):
    # shader nodes for light snow
    out = nw.new_node("Group Output")
    return out
