def materials_polished_glass(nw):
    # shader nodes for polished glass
    out = nw.new_node("Group Output")
    return out
