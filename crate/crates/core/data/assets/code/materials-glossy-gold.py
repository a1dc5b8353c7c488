def materials_glossy_gold(nw):
    # shader nodes for glossy gold
    out = nw.new_node("Group Output")
    return out
