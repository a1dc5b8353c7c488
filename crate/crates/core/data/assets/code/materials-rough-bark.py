def materials_rough_bark(nw):
    # shader nodes for rough bark
    out = nw.new_node("Group Output")
    return out
