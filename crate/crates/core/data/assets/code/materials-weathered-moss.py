def materials_weathered_moss(nw):
    # shader nodes for weathered moss
    out = nw.new_node("Group Output")
    return out
