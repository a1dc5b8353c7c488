def materials_painted_fabric(nw):
    # shader nodes for painted fabric
    out = nw.new_node("Group Output")
    return out
