def materials_glossy_sand(nw):
    # shader nodes for glossy sand
    out = nw.new_node("Group Output")
    return out
