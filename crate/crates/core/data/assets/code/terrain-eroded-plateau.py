def terrain_eroded_plateau(nw):
    # geometry nodes for eroded plateau
    out = nw.new_node("Group Output")
    return out
