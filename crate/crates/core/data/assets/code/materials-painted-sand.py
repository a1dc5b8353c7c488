def materials_painted_sand(nw):
    # shader nodes for painted sand
    out = nw.new_node("Group Output")
    return out
