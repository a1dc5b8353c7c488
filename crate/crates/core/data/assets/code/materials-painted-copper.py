def materials_painted_copper(nw):
    # shader nodes for painted copper
    out = nw.new_node("Group Output")
    return out
