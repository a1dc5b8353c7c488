def materials_polished_stone(nw):
    # shader nodes for polished stone
    out = nw.new_node("Group Output")
    return out
