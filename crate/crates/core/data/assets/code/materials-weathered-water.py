def materials_weathered_water(nw):
    # shader nodes for weathered water
    out = nw.new_node("Group Output")
    return out
