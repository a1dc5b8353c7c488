def indoors_wooden_lamp(nw):
    # geometry nodes for wooden lamp
    out = nw.new_node("Group Output")
    return out
