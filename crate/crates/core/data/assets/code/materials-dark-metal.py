def materials_dark_metal(nw):
    # shader nodes for dark metal
    out = nw.new_node("Group Output")
    return out
