def outdoors_garden_bench(nw):
    # geometry nodes for garden bench
    out = nw.new_node("Group Output")
    return out
