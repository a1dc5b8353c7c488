def materials_rough_snow(nw):
    # shader nodes for rough snow
    out = nw.new_node("Group Output")
    return out
