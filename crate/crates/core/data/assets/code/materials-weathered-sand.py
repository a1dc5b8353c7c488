def materials_weathered_sand(nw):
    # shader nodes for weathered sand
    out = nw.new_node("Group Output")
    return out
