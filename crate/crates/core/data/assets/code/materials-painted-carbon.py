def materials_painted_carbon(nw):
    # shader nodes for painted carbon
    out = nw.new_node("Group Output")
    return out
