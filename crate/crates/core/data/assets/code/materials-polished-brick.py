def materials_polished_brick(nw):
    # shader nodes for polished brick
    out = nw.new_node("Group Output")
    return out
