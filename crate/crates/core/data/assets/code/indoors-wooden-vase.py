def indoors_wooden_vase(nw):
    # geometry nodes for wooden vase
    out = nw.new_node("Group Output")
    return out
