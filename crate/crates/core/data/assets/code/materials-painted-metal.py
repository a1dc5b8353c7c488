def materials_painted_metal(nw):
    # shader nodes for painted metal
    out = nw.new_node("Group Output")
    return out
