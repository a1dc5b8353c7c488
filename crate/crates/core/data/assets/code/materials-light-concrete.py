def materials_light_concrete(nw):
    # shader nodes for light concrete
    out = nw.new_node("Group Output")
    return out
