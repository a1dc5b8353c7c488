def outdoors_garden_lamppost(nw):
    # geometry nodes for garden lamppost
    out = nw.new_node("Group Output")
    return out
