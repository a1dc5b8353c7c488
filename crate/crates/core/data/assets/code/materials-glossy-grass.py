def materials_glossy_grass(nw):
    # shader nodes for glossy grass
    out = nw.new_node("Group Output")
    return out
