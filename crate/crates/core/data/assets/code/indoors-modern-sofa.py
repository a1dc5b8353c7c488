def indoors_modern_sofa(nw):
    # geometry nodes for modern sofa
    out = nw.new_node("Group Output")
    return out
