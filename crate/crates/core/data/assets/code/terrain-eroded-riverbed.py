def terrain_eroded_riverbed(nw):
    # geometry nodes for eroded riverbed
    out = nw.new_node("Group Output")
    return out
