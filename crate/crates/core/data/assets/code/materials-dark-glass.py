def materials_dark_glass(nw):
    # shader nodes for dark glass
    out = nw.new_node("Group Output")
    return out
