def materials_painted_glass(nw):
    # shader nodes for painted glass
    out = nw.new_node("Group Output")
    return out
