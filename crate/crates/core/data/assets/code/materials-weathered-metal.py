def materials_weathered_metal(nw):
    # shader nodes for weathered metal
    out = nw.new_node("Group Output")
    return out
