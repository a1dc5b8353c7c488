def materials_polished_wood(nw):
    # shader nodes for polished wood
    out = nw.new_node("Group Output")
    return out
