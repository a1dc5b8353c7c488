def scattering_dense_snow(nw):
    # geometry nodes for dense snow
    out = nw.new_node("Group Output")
    return out
