def materials_dark_porcelain(nw):
    # shader nodes for dark porcelain
    out = nw.new_node("Group Output")
    return out
