def materials_polished_copper(nw):
    # shader nodes for polished copper
    out = nw.new_node("Group Output")
    return out
