def plants_wild_lily(nw):
    # geometry nodes for wild lily
    out = nw.new_node("Group Output")
    return out
