def materials_glossy_asphalt(nw):
    # shader nodes for glossy asphalt
    out = nw.new_node("Group Output")
    return out
