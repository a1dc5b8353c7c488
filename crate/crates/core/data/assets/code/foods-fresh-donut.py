def foods_fresh_donut(nw):
    # geometry nodes for fresh donut
    out = nw.new_node("Group Output")
    return out
