def plants_wild_tulip(nw):
    # geometry nodes for wild tulip
    out = nw.new_node("Group Output")
    return out
