def materials_glossy_lava(nw):
    # shader nodes for glossy lava
    out = nw.new_node("Group Output")
    return out
