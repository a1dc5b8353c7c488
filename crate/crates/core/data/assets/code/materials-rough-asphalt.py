def materials_rough_asphalt(nw):
    # shader nodes for rough asphalt
    out = nw.new_node("Group Output")
    return out
