def materials_light_lava(nw):
    # shader nodes for light lava
    out = nw.new_node("Group Output")
    return out
