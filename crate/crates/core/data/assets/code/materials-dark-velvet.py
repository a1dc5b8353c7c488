def materials_dark_velvet(nw):
    # shader nodes for dark velvet
    out = nw.new_node("Group Output")
    return out
