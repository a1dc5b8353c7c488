def materials_rough_fabric(nw):
    # shader nodes for rough fabric
    out = nw.new_node("Group Output")
    return out
