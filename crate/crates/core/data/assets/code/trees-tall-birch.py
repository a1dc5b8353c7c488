def trees_tall_birch(nw):
    # geometry nodes for tall birch
    out = nw.new_node("Group Output")
    return out
