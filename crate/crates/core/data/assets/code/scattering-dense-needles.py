def scattering_dense_needles(nw):
    # geometry nodes for dense needles
    out = nw.new_node("Group Output")
    return out
