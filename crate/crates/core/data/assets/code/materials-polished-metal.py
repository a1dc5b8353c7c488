def materials_polished_metal(nw):
    # shader nodes for polished metal
    out = nw.new_node("Group Output")
    return out
