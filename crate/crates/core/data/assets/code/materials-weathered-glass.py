def materials_weathered_glass(nw):
    # shader nodes for weathered glass
    out = nw.new_node("Group Output")
    return out
