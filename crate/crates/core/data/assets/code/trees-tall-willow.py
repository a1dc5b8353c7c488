def trees_tall_willow(nw):
    # geometry nodes for tall willow
    out = nw.new_node("Group Output")
    return out
