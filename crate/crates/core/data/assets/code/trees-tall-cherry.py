def trees_tall_cherry(nw):
    # geometry nodes for tall cherry
    out = nw.new_node("Group Output")
    return out
