def materials_rough_leather(nw):
    # shader nodes for rough leather
    out = nw.new_node("Group Output")
    return out
