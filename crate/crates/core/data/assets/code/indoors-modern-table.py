def indoors_modern_table(nw):
    # geometry nodes for modern table
    out = nw.new_node("Group Output")
    return out
