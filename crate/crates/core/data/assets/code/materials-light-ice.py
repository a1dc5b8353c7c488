def materials_light_ice(nw):
    # shader nodes for light ice
    out = nw.new_node("Group Output")
    return out
