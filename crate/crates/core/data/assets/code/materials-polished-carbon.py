def materials_polished_carbon(nw):
    # shader nodes for polished carbon
    out = nw.new_node("Group Output")
    return out
