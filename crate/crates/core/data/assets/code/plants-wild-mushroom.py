def plants_wild_mushroom(nw):
    # geometry nodes for wild mushroom
    out = nw.new_node("Group Output")
    return out
