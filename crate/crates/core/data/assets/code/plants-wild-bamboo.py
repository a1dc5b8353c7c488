def plants_wild_bamboo(nw):
    # geometry nodes for wild bamboo
    out = nw.new_node("Group Output")
    return out
