def materials_weathered_leather(nw):
    # shader nodes for weathered leather
    out = nw.new_node("Group Output")
    return out
