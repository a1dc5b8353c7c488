def scattering_dense_sand(nw):
    # geometry nodes for dense sand
    out = nw.new_node("Group Output")
    return out
