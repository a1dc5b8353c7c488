def materials_light_granite(nw):
    # shader nodes for light granite
    out = nw.new_node("Group Output")
    return out
