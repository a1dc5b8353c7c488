def materials_painted_marble(nw):
    # shader nodes for painted marble
    out = nw.new_node("Group Output")
    return out
