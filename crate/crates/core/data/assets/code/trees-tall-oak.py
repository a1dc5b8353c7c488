def trees_tall_oak(nw):
    # geometry nodes for tall oak
    out = nw.new_node("Group Output")
    return out
