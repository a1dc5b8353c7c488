def terrain_eroded_canyon(nw):
    # geometry nodes for eroded canyon
    out = nw.new_node("Group Output")
    return out
