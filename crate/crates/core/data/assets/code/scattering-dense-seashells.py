def scattering_dense_seashells(nw):
    # geometry nodes for dense seashells
    out = nw.new_node("Group Output")
    return out
