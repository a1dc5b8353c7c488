def materials_weathered_plastic(nw):
    # shader nodes for weathered plastic
    out = nw.new_node("Group Output")
    return out
