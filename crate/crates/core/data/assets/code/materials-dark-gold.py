def materials_dark_gold(nw):
    # shader nodes for dark gold
    out = nw.new_node("Group Output")
    return out
