def materials_glossy_bark(nw):
    # shader nodes for glossy bark
    out = nw.new_node("Group Output")
    return out
