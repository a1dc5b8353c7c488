def outdoors_garden_bridge(nw):
    # geometry nodes for garden bridge
    out = nw.new_node("Group Output")
    return out
