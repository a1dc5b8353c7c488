def materials_dark_concrete(nw):
    # shader nodes for dark concrete
    out = nw.new_node("Group Output")
    return out
