def plants_wild_vine(nw):
    # geometry nodes for wild vine
    out = nw.new_node("Group Output")
    return out
