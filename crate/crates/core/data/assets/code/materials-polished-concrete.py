def materials_polished_concrete(nw):
    # shader nodes for polished concrete
    out = nw.new_node("Group Output")
    return out
