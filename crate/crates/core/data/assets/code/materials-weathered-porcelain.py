def materials_weathered_porcelain(nw):
    # shader nodes for weathered porcelain
    out = nw.new_node("Group Output")
    return out
