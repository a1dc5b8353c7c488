def foods_fresh_cake(nw):
    # geometry nodes for fresh cake
    out = nw.new_node("Group Output")
    return out
