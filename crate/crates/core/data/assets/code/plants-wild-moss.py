def plants_wild_moss(nw):
    # geometry nodes for wild moss
    out = nw.new_node("Group Output")
    return out
