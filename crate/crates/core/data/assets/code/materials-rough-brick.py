def materials_rough_brick(nw):
    # shader nodes for rough brick
    out = nw.new_node("Group Output")
    return out
