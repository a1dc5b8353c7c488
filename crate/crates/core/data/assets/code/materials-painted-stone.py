def materials_painted_stone(nw):
    # shader nodes for painted stone
    out = nw.new_node("Group Output")
    return out
