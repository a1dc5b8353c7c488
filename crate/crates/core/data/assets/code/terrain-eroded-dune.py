def terrain_eroded_dune(nw):
    # geometry nodes for eroded dune
    out = nw.new_node("Group Output")
    return out
