def scattering_dense_twigs(nw):
    # geometry nodes for dense twigs
    out = nw.new_node("Group Output")
    return out
