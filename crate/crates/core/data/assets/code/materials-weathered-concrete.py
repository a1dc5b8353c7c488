def materials_weathered_concrete(nw):
    # shader nodes for weathered concrete
    out = nw.new_node("Group Output")
    return out
