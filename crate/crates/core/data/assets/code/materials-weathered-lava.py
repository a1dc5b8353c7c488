def materials_weathered_lava(nw):
    # shader nodes for weathered lava
    out = nw.new_node("Group Output")
    return out
