def materials_weathered_mud(nw):
    # shader nodes for weathered mud
    out = nw.new_node("Group Output")
    return out
