def materials_painted_mud(nw):
    # shader nodes for painted mud
    out = nw.new_node("Group Output")
    return out
