def foods_fresh_watermelon(nw):
    # geometry nodes for fresh watermelon
    out = nw.new_node("Group Output")
    return out
