def materials_polished_sand(nw):
    # shader nodes for polished sand
    out = nw.new_node("Group Output")
    return out
