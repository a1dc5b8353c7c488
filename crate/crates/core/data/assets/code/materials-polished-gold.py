def materials_polished_gold(nw):
    # shader nodes for polished gold
    out = nw.new_node("Group Output")
    return out
