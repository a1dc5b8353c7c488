def plants_wild_fern(nw):
    # geometry nodes for wild fern
    out = nw.new_node("Group Output")
    return out
