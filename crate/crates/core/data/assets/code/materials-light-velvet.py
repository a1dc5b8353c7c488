def materials_light_velvet(nw):
    # shader nodes for light velvet
    out = nw.new_node("Group Output")
    return out
