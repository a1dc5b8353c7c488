def rocks_mossy_stone(nw):
    # geometry nodes for mossy stone
    out = nw.new_node("Group Output")
    return out
