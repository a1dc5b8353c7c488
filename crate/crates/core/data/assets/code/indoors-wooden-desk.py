def indoors_wooden_desk(nw):
    # geometry nodes for wooden desk
    out = nw.new_node("Group Output")
    return out
