def materials_light_glass(nw):
    # shader nodes for light glass
    out = nw.new_node("Group Output")
    return out
