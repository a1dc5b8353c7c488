def materials_painted_granite(nw):
    # shader nodes for painted granite
    out = nw.new_node("Group Output")
    return out
