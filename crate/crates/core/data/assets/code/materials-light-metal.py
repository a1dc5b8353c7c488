def materials_light_metal(nw):
    # shader nodes for light metal
    out = nw.new_node("Group Output")
    return out
