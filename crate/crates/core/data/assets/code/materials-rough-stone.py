def materials_rough_stone(nw):
    # shader nodes for rough stone
    out = nw.new_node("Group Output")
    return out
