def materials_light_asphalt(nw):
    # shader nodes for light asphalt
    out = nw.new_node("Group Output")
    return out
