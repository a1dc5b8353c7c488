def materials_rough_plastic(nw):
    # shader nodes for rough plastic
    out = nw.new_node("Group Output")
    return out
