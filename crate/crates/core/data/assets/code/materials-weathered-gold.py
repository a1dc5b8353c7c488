def materials_weathered_gold(nw):
    # shader nodes for weathered gold
    out = nw.new_node("Group Output")
    return out
