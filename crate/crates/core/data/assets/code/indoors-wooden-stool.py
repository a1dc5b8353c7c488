def indoors_wooden_stool(nw):
    # geometry nodes for wooden stool
    out = nw.new_node("Group Output")
    return out
