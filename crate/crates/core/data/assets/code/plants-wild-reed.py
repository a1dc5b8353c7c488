def plants_wild_reed(nw):
    # geometry nodes for wild reed
    out = nw.new_node("Group Output")
    return out
