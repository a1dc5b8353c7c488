def materials_glossy_marble(nw):
    # shader nodes for glossy marble
    out = nw.new_node("Group Output")
    return out
