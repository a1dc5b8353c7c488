def materials_glossy_ice(nw):
    # shader nodes for glossy ice
    out = nw.new_node("Group Output")
    return out
