def materials_polished_porcelain(nw):
    # shader nodes for polished porcelain
    out = nw.new_node("Group Output")
    return out
