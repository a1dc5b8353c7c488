def materials_dark_brick(nw):
    # shader nodes for dark brick
    out = nw.new_node("Group Output")
    return out
