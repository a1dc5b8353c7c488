def materials_painted_ceramic(nw):
    # shader nodes for painted ceramic
    out = nw.new_node("Group Output")
    return out
