def materials_polished_water(nw):
    # shader nodes for polished water
    out = nw.new_node("Group Output")
    return out
