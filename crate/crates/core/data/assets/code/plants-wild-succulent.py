def plants_wild_succulent(nw):
    # geometry nodes for wild succulent
    out = nw.new_node("Group Output")
    return out
