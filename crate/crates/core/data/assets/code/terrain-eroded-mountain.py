def terrain_eroded_mountain(nw):
    # geometry nodes for eroded mountain
    out = nw.new_node("Group Output")
    return out
