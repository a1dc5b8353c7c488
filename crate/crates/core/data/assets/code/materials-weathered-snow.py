def materials_weathered_snow(nw):
    # shader nodes for weathered snow
    out = nw.new_node("Group Output")
    return out
