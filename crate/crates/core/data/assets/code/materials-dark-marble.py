def materials_dark_marble(nw):
    # shader nodes for dark marble
    out = nw.new_node("Group Output")
    return out
