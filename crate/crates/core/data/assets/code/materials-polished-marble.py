def materials_polished_marble(nw):
    # shader nodes for polished marble
    out = nw.new_node("Group Output")
    return out
