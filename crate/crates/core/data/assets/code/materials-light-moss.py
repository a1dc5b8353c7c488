def materials_light_moss(nw):
    # shader nodes for light moss
    out = nw.new_node("Group Output")
    return out
