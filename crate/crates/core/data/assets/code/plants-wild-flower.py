def plants_wild_flower(nw):
    # geometry nodes for wild flower
    out = nw.new_node("Group Output")
    return out
