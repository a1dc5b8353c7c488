def outdoors_garden_well(nw):
    # geometry nodes for garden well
    out = nw.new_node("Group Output")
    return out
