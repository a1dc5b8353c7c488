def materials_light_copper(nw):
    # shader nodes for light copper
    out = nw.new_node("Group Output")
    return out
