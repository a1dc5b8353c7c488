def materials_weathered_velvet(nw):
    # shader nodes for weathered velvet
    out = nw.new_node("Group Output")
    return out
