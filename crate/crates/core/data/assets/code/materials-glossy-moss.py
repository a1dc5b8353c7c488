def materials_glossy_moss(nw):
    # shader nodes for glossy moss
    out = nw.new_node("Group Output")
    return out
