def materials_glossy_copper(nw):
    # shader nodes for glossy copper
    out = nw.new_node("Group Output")
    return out
