def trees_tall_baobab(nw):
    # geometry nodes for tall baobab
    out = nw.new_node("Group Output")
    return out
