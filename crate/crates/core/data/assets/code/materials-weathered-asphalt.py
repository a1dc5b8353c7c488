def materials_weathered_asphalt(nw):
    # shader nodes for weathered asphalt
    out = nw.new_node("Group Output")
    return out
