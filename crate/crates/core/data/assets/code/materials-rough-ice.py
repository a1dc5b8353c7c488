def materials_rough_ice(nw):
    # shader nodes for rough ice
    out = nw.new_node("Group Output")
    return out
