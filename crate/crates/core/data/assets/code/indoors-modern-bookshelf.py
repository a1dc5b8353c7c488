def indoors_modern_bookshelf(nw):
    # geometry nodes for modern bookshelf
    out = nw.new_node("Group Output")
    return out
