def materials_glossy_velvet(nw):
    # shader nodes for glossy velvet
    out = nw.new_node("Group Output")
    return out
