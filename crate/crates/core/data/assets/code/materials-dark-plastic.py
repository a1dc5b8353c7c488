def materials_dark_plastic(nw):
    # shader nodes for dark plastic
    out = nw.new_node("Group Output")
    return out
