def materials_light_sand(nw):
    # shader nodes for light sand
    out = nw.new_node("Group Output")
    return out
