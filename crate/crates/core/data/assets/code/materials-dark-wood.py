def materials_dark_wood(nw):
    # shader nodes for dark wood
    out = nw.new_node("Group Output")
    return out
