def indoors_modern_desk(nw):
    # geometry nodes for modern desk
    out = nw.new_node("Group Output")
    return out
