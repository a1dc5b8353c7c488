def rocks_mossy_arch(nw):
    # geometry nodes for mossy arch
    out = nw.new_node("Group Output")
    return out
