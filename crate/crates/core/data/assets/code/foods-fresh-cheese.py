def foods_fresh_cheese(nw):
    # geometry nodes for fresh cheese
    out = nw.new_node("Group Output")
    return out
