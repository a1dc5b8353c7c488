def materials_weathered_ice(nw):
    # shader nodes for weathered ice
    out = nw.new_node("Group Output")
    return out
