def materials_weathered_grass(nw):
    # shader nodes for weathered grass
    out = nw.new_node("Group Output")
    return out
