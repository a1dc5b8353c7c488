def materials_dark_stone(nw):
    # shader nodes for dark stone
    out = nw.new_node("Group Output")
    return out
