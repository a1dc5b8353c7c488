def materials_polished_velvet(nw):
    # shader nodes for polished velvet
    out = nw.new_node("Group Output")
    return out
