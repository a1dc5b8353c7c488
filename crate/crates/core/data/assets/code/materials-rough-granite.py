def materials_rough_granite(nw):
    # shader nodes for rough granite
    out = nw.new_node("Group Output")
    return out
