def materials_rough_marble(nw):
    # shader nodes for rough marble
    out = nw.new_node("Group Output")
    return out
