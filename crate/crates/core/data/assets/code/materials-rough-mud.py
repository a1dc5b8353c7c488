def materials_rough_mud(nw):
    # shader nodes for rough mud
    out = nw.new_node("Group Output")
    return out
