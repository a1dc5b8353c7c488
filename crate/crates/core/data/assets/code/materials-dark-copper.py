def materials_dark_copper(nw):
    # shader nodes for dark copper
    out = nw.new_node("Group Output")
    return out
