def trees_tall_palm(nw):
    # geometry nodes for tall palm
    out = nw.new_node("Group Output")
    return out
