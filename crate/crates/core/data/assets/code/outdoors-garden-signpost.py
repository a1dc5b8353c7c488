def outdoors_garden_signpost(nw):
    # geometry nodes for garden signpost
    out = nw.new_node("Group Output")
    return out
