def materials_glossy_carbon(nw):
    # shader nodes for glossy carbon
    out = nw.new_node("Group Output")
    return out
