def materials_rough_copper(nw):
    # shader nodes for rough copper
    out = nw.new_node("Group Output")
    return out
