def rocks_mossy_boulder(nw):
    # geometry nodes for mossy boulder
    out = nw.new_node("Group Output")
    return out
