def trees_tall_cypress(nw):
    # geometry nodes for tall cypress
    out = nw.new_node("Group Output")
    return out
