def indoors_wooden_wardrobe(nw):
    # geometry nodes for wooden wardrobe
    out = nw.new_node("Group Output")
    return out
