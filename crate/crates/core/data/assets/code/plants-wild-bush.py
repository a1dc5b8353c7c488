def plants_wild_bush(nw):
    # geometry nodes for wild bush
    out = nw.new_node("Group Output")
    return out
