def scattering_dense_flowers(nw):
    # geometry nodes for dense flowers
    out = nw.new_node("Group Output")
    return out
