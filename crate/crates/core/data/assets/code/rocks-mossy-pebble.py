def rocks_mossy_pebble(nw):
    # geometry nodes for mossy pebble
    out = nw.new_node("Group Output")
    return out
