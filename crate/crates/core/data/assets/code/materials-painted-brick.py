def materials_painted_brick(nw):
    # shader nodes for painted brick
    out = nw.new_node("Group Output")
    return out
