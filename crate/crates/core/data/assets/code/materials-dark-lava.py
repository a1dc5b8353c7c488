def materials_dark_lava(nw):
    # shader nodes for dark lava
    out = nw.new_node("Group Output")
    return out
