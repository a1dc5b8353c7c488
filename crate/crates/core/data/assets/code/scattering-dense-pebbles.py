def scattering_dense_pebbles(nw):
    # geometry nodes for dense pebbles
    out = nw.new_node("Group Output")
    return out
