def materials_weathered_carbon(nw):
    # shader nodes for weathered carbon
    out = nw.new_node("Group Output")
    return out
