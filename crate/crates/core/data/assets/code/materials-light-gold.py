def materials_light_gold(nw):
    # shader nodes for light gold
    out = nw.new_node("Group Output")
    return out
