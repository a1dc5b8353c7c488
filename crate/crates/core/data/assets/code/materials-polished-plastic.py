def materials_polished_plastic(nw):
    # shader nodes for polished plastic
    out = nw.new_node("Group Output")
    return out
