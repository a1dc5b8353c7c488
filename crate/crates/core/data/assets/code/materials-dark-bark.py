def materials_dark_bark(nw):
    # shader nodes for dark bark
    out = nw.new_node("Group Output")
    return out
