def materials_dark_ice(nw):
    # shader nodes for dark ice
    out = nw.new_node("Group Output")
    return out
