def scattering_dense_leaves(nw):
    # geometry nodes for dense leaves
    out = nw.new_node("Group Output")
    return out
