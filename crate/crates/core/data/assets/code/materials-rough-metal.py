def materials_rough_metal(nw):
    # shader nodes for rough metal
    out = nw.new_node("Group Output")
    return out
