def materials_glossy_ceramic(nw):
    # shader nodes for glossy ceramic
    out = nw.new_node("Group Output")
    return out
