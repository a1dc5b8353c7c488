def materials_rough_ceramic(nw):
    # shader nodes for rough ceramic
    out = nw.new_node("Group Output")
    return out
