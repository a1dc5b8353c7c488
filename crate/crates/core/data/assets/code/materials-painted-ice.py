def materials_painted_ice(nw):
    # shader nodes for painted ice
    out = nw.new_node("Group Output")
    return out
