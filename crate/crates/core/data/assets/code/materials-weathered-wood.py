def materials_weathered_wood(nw):
    # shader nodes for weathered wood
    out = nw.new_node("Group Output")
    return out
