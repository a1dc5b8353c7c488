def materials_polished_ceramic(nw):
    # shader nodes for polished ceramic
    out = nw.new_node("Group Output")
    return out
