def materials_weathered_stone(nw):
    # shader nodes for weathered stone
    out = nw.new_node("Group Output")
    return out
