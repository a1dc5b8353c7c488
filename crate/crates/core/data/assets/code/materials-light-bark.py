def materials_light_bark(nw):
    # shader nodes for light bark
    out = nw.new_node("Group Output")
    return out
