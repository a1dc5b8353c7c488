def materials_glossy_fabric(nw):
    # shader nodes for glossy fabric
    out = nw.new_node("Group Output")
    return out
