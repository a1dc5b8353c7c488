def indoors_wooden_sofa(nw):
    # geometry nodes for wooden sofa
    out = nw.new_node("Group Output")
    return out
