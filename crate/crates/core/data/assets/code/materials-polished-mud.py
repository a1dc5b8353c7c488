def materials_polished_mud(nw):
    # shader nodes for polished mud
    out = nw.new_node("Group Output")
    return out
