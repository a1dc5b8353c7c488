def scattering_scattered_petals(nw):
    # geometry nodes for scattered petals
    out = nw.new_node("Group Output")
    return out
