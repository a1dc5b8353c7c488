def materials_polished_bark(nw):
    # shader nodes for polished bark
    out = nw.new_node("Group Output")
    return out
