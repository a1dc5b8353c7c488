def materials_light_wood(nw):
    # shader nodes for light wood
    out = nw.new_node("Group Output")
    return out
