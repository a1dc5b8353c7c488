def materials_weathered_ceramic(nw):
    # shader nodes for weathered ceramic
    out = nw.new_node("Group Output")
    return out
