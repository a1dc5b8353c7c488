def materials_polished_ice(nw):
    # shader nodes for polished ice
    out = nw.new_node("Group Output")
    return out
