def plants_wild_daisy(nw):
    # geometry nodes for wild daisy
    out = nw.new_node("Group Output")
    return out
