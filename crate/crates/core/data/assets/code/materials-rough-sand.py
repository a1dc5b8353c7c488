def materials_rough_sand(nw):
    # shader nodes for rough sand
    out = nw.new_node("Group Output")
    return out
