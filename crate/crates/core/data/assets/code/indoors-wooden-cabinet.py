def indoors_wooden_cabinet(nw):
    # geometry nodes for wooden cabinet
    out = nw.new_node("Group Output")
    return out
