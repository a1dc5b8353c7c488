def materials_polished_grass(nw):
    # shader nodes for polished grass
    out = nw.new_node("Group Output")
    return out
