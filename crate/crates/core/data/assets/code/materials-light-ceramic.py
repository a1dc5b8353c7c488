def materials_light_ceramic(nw):
    # shader nodes for light ceramic
    out = nw.new_node("Group Output")
    return out
