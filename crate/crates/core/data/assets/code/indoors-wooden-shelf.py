def indoors_wooden_shelf(nw):
    # geometry nodes for wooden shelf
    out = nw.new_node("Group Output")
    return out
