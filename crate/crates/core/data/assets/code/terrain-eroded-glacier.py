def terrain_eroded_glacier(nw):
    # geometry nodes for eroded glacier
    out = nw.new_node("Group Output")
    return out
