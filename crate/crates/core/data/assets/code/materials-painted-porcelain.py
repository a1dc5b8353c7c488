def materials_painted_porcelain(nw):
    # shader nodes for painted porcelain
    out = nw.new_node("Group Output")
    return out
