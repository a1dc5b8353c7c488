def indoors_wooden_bookshelf(nw):
    # geometry nodes for wooden bookshelf
    out = nw.new_node("Group Output")
    return out
