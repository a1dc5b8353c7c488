def indoors_modern_lamp(nw):
    # geometry nodes for modern lamp
    out = nw.new_node("Group Output")
    return out
