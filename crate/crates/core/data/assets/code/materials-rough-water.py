def materials_rough_water(nw):
    # shader nodes for rough water
    out = nw.new_node("Group Output")
    return out
