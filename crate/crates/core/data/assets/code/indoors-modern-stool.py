def indoors_modern_stool(nw):
    # geometry nodes for modern stool
    out = nw.new_node("Group Output")
    return out
