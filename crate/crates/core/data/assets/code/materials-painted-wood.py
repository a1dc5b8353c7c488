def materials_painted_wood(nw):
    # shader nodes for painted wood
    out = nw.new_node("Group Output")
    return out
