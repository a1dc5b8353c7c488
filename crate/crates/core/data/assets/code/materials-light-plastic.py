def materials_light_plastic(nw):
    # shader nodes for light plastic
    out = nw.new_node("Group Output")
    return out
