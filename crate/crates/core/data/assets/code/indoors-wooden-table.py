def indoors_wooden_table(nw):
    # geometry nodes for wooden table
    out = nw.new_node("Group Output")
    return out
