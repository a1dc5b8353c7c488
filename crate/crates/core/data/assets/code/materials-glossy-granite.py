def materials_glossy_granite(nw):
    # shader nodes for glossy granite
    out = nw.new_node("Group Output")
    return out
