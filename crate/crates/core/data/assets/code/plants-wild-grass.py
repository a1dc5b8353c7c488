def plants_wild_grass(nw):
    # geometry nodes for wild grass
    out = nw.new_node("Group Output")
    return out
