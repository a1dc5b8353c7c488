def materials_dark_asphalt(nw):
    # shader nodes for dark asphalt
    out = nw.new_node("Group Output")
    return out
