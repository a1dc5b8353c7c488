def foods_fresh_apple(nw):
    # geometry nodes for fresh apple
    out = nw.new_node("Group Output")
    return out
