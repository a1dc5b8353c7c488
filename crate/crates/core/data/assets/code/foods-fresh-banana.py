def foods_fresh_banana(nw):
    # geometry nodes for fresh banana
    out = nw.new_node("Group Output")
    return out
