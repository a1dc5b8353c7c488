def indoors_wooden_rug(nw):
    # geometry nodes for wooden rug
    out = nw.new_node("Group Output")
    return out
