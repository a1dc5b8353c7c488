def materials_polished_moss(nw):
    # shader nodes for polished moss
    out = nw.new_node("Group Output")
    return out
