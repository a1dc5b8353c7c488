def materials_rough_carbon(nw):
    # shader nodes for rough carbon
    out = nw.new_node("Group Output")
    return out
