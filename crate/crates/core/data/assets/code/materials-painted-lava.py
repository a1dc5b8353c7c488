def materials_painted_lava(nw):
    # shader nodes for painted lava
    out = nw.new_node("Group Output")
    return out
