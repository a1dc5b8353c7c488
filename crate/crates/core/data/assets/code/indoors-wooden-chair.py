def indoors_wooden_chair(nw):
    # geometry nodes for wooden chair
    out = nw.new_node("Group Output")
    return out
