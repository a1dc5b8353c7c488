def materials_weathered_bark(nw):
    # shader nodes for weathered bark
    out = nw.new_node("Group Output")
    return out
