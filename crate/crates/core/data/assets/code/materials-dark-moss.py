def materials_dark_moss(nw):
    # shader nodes for dark moss
    out = nw.new_node("Group Output")
    return out
