def materials_dark_sand(nw):
    # shader nodes for dark sand
    out = nw.new_node("Group Output")
    return out
