def indoors_modern_shelf(nw):
    # geometry nodes for modern shelf
    out = nw.new_node("Group Output")
    return out
