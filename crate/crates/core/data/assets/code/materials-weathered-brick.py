def materials_weathered_brick(nw):
    # shader nodes for weathered brick
    out = nw.new_node("Group Output")
    return out
