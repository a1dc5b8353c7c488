def materials_dark_leather(nw):
    # shader nodes for dark leather
    out = nw.new_node("Group Output")
    return out
