def scattering_dense_grass(nw):
    # geometry nodes for dense grass
    out = nw.new_node("Group Output")
    return out
