def materials_painted_moss(nw):
    # shader nodes for painted moss
    out = nw.new_node("Group Output")
    return out
