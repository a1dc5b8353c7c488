def materials_dark_granite(nw):
    # shader nodes for dark granite
    out = nw.new_node("Group Output")
    return out
