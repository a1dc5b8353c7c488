def materials_rough_glass(nw):
    # shader nodes for rough glass
    out = nw.new_node("Group Output")
    return out
