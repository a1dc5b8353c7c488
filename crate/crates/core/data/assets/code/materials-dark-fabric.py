def materials_dark_fabric(nw):
    # shader nodes for dark fabric
    out = nw.new_node("Group Output")
    return out
