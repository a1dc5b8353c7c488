def materials_weathered_marble(nw):
    # shader nodes for weathered marble
    out = nw.new_node("Group Output")
    return out
