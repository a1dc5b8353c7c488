def materials_rough_grass(nw):
    # shader nodes for rough grass
    out = nw.new_node("Group Output")
    return out
