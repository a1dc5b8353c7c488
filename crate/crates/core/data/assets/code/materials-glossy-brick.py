def materials_glossy_brick(nw):
    # shader nodes for glossy brick
    out = nw.new_node("Group Output")
    return out
