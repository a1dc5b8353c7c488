def rocks_mossy_cliff(nw):
    # geometry nodes for mossy cliff
    out = nw.new_node("Group Output")
    return out
