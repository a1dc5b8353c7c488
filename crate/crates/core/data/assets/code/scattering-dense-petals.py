def scattering_dense_petals(nw):
    # geometry nodes for dense petals
    out = nw.new_node("Group Output")
    return out
