def materials_dark_tile(nw):
    # shader nodes for dark tile
    out = nw.new_node("Group Output")
    return out
