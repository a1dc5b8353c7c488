def materials_painted_leather(nw):
    # shader nodes for painted leather
    out = nw.new_node("Group Output")
    return out
