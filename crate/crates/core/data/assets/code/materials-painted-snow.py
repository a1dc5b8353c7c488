def materials_painted_snow(nw):
    # shader nodes for painted snow
    out = nw.new_node("Group Output")
    return out
