def materials_glossy_water(nw):
    # shader nodes for glossy water
    out = nw.new_node("Group Output")
    return out
