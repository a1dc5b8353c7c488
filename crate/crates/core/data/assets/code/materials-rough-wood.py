def materials_rough_wood(nw):
    # shader nodes for rough wood
    out = nw.new_node("Group Output")
    return out
