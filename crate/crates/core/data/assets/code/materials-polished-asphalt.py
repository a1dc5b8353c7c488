def materials_polished_asphalt(nw):
    # shader nodes for polished asphalt
    out = nw.new_node("Group Output")
    return out
