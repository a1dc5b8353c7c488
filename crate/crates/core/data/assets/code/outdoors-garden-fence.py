def outdoors_garden_fence(nw):
    # geometry nodes for garden fence
    out = nw.new_node("Group Output")
    return out
