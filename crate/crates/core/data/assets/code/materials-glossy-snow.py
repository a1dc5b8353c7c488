def materials_glossy_snow(nw):
    # shader nodes for glossy snow
    out = nw.new_node("Group Output")
    return out
