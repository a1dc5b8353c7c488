def plants_wild_ivy(nw):
    # geometry nodes for wild ivy
    out = nw.new_node("Group Output")
    return out
