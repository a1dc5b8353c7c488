def indoors_modern_mirror(nw):
    # geometry nodes for modern mirror
    out = nw.new_node("Group Output")
    return out
