def scattering_dense_acorns(nw):
    # geometry nodes for dense acorns
    out = nw.new_node("Group Output")
    return out
