def materials_painted_velvet(nw):
    # shader nodes for painted velvet
    out = nw.new_node("Group Output")
    return out
