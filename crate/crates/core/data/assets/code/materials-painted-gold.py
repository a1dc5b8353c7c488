def materials_painted_gold(nw):
    # shader nodes for painted gold
    out = nw.new_node("Group Output")
    return out
