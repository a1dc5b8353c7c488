def materials_dark_mud(nw):
    # shader nodes for dark mud
    out = nw.new_node("Group Output")
    return out
