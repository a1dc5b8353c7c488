def materials_dark_grass(nw):
    # shader nodes for dark grass
    out = nw.new_node("Group Output")
    return out
