def materials_painted_asphalt(nw):
    # shader nodes for painted asphalt
    out = nw.new_node("Group Output")
    return out
