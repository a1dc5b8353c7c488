def indoors_modern_chair(nw):
    # geometry nodes for modern chair
    out = nw.new_node("Group Output")
    return out
