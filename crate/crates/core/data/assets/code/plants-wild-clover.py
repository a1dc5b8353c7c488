def plants_wild_clover(nw):
    # geometry nodes for wild clover
    out = nw.new_node("Group Output")
    return out
