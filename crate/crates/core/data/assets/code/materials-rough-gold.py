def materials_rough_gold(nw):
    # shader nodes for rough gold
    out = nw.new_node("Group Output")
    return out
