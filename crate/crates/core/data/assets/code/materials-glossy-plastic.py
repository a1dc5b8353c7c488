def materials_glossy_plastic(nw):
    # shader nodes for glossy plastic
    out = nw.new_node("Group Output")
    return out
