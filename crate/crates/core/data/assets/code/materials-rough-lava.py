def materials_rough_lava(nw):
    # shader nodes for rough lava
    out = nw.new_node("Group Output")
    return out
