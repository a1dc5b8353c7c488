def materials_painted_plastic(nw):
    # shader nodes for painted plastic
    out = nw.new_node("Group Output")
    return out
