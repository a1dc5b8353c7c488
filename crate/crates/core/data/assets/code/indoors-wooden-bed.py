def indoors_wooden_bed(nw):
    # geometry nodes for wooden bed
    out = nw.new_node("Group Output")
    return out
