def foods_fresh_orange(nw):
    # geometry nodes for fresh orange
    out = nw.new_node("Group Output")
    return out
