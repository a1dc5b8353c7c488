def materials_polished_fabric(nw):
    # shader nodes for polished fabric
    out = nw.new_node("Group Output")
    return out
