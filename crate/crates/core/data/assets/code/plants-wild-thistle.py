def plants_wild_thistle(nw):
    # geometry nodes for wild thistle
    out = nw.new_node("Group Output")
    return out
