def materials_glossy_porcelain(nw):
    # shader nodes for glossy porcelain
    out = nw.new_node("Group Output")
    return out
