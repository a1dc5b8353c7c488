def rocks_mossy_slate(nw):
    # geometry nodes for mossy slate
    out = nw.new_node("Group Output")
    return out
