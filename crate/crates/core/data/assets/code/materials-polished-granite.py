def materials_polished_granite(nw):
    # shader nodes for polished granite
    out = nw.new_node("Group Output")
    return out
