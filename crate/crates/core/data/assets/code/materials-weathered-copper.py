def materials_weathered_copper(nw):
    # shader nodes for weathered copper
    out = nw.new_node("Group Output")
    return out
