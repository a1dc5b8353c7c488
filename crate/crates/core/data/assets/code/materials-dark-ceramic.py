def materials_dark_ceramic(nw):
    # shader nodes for dark ceramic
    out = nw.new_node("Group Output")
    return out
