def materials_glossy_leather(nw):
    # shader nodes for glossy leather
    out = nw.new_node("Group Output")
    return out
