def materials_painted_concrete(nw):
    # shader nodes for painted concrete
    out = nw.new_node("Group Output")
    return out
