def materials_light_marble(nw):
    # shader nodes for light marble
    out = nw.new_node("Group Output")
    return out
