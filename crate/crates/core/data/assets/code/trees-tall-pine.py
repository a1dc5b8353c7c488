def trees_tall_pine(nw):
    # geometry nodes for tall pine
    out = nw.new_node("Group Output")
    return out
