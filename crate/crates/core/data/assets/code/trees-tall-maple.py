def trees_tall_maple(nw):
    # geometry nodes for tall maple
    out = nw.new_node("Group Output")
    return out
