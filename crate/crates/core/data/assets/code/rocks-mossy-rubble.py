def rocks_mossy_rubble(nw):
    # geometry nodes for mossy rubble
    out = nw.new_node("Group Output")
    return out
