def materials_dark_water(nw):
    # shader nodes for dark water
    out = nw.new_node("Group Output")
    return out
