def materials_weathered_fabric(nw):
    # shader nodes for weathered fabric
    out = nw.new_node("Group Output")
    return out
