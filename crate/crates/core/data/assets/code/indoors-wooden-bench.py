def indoors_wooden_bench(nw):
    # geometry nodes for wooden bench
    out = nw.new_node("Group Output")
    return out
