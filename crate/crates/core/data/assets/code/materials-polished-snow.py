def materials_polished_snow(nw):
    # shader nodes for polished snow
    out = nw.new_node("Group Output")
    return out
