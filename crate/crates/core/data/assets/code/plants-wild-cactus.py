def plants_wild_cactus(nw):
    # geometry nodes for wild cactus
    out = nw.new_node("Group Output")
    return out
