def materials_painted_grass(nw):
    # shader nodes for painted grass
    out = nw.new_node("Group Output")
    return out
