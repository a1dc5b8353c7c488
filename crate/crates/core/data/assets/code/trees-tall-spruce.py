def trees_tall_spruce(nw):
    # geometry nodes for tall spruce
    out = nw.new_node("Group Output")
    return out
