def materials_light_leather(nw):
    # shader nodes for light leather
    out = nw.new_node("Group Output")
    return out
