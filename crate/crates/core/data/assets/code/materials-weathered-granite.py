def materials_weathered_granite(nw):
    # shader nodes for weathered granite
    out = nw.new_node("Group Output")
    return out
