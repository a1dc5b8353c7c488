def materials_rough_moss(nw):
    # shader nodes for rough moss
    out = nw.new_node("Group Output")
    return out
