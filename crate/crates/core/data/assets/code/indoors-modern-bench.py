def indoors_modern_bench(nw):
    # geometry nodes for modern bench
    out = nw.new_node("Group Output")
    return out
