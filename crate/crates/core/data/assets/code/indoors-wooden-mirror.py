def indoors_wooden_mirror(nw):
    # geometry nodes for wooden mirror
    out = nw.new_node("Group Output")
    return out
