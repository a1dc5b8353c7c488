def materials_polished_lava(nw):
    # shader nodes for polished lava
    out = nw.new_node("Group Output")
    return out
