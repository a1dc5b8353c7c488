def materials_dark_carbon(nw):
    # shader nodes for dark carbon
    out = nw.new_node("Group Output")
    return out
