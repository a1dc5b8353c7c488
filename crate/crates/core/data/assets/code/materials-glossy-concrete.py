def materials_glossy_concrete(nw):
    # shader nodes for glossy concrete
    out = nw.new_node("Group Output")
    return out
