def foods_fresh_bread(nw):
    # geometry nodes for fresh bread
    out = nw.new_node("Group Output")
    return out
