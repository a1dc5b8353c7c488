def materials_polished_leather(nw):
    # shader nodes for polished leather
    out = nw.new_node("Group Output")
    return out
