def materials_rough_porcelain(nw):
    # shader nodes for rough porcelain
    out = nw.new_node("Group Output")
    return out
