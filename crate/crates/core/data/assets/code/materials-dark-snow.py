def materials_dark_snow(nw):
    # shader nodes for dark snow
    out = nw.new_node("Group Output")
    return out
