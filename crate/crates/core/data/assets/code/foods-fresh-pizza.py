def foods_fresh_pizza(nw):
    # geometry nodes for fresh pizza
    out = nw.new_node("Group Output")
    return out
