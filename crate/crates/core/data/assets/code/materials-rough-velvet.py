def materials_rough_velvet(nw):
    # shader nodes for rough velvet
    out = nw.new_node("Group Output")
    return out
