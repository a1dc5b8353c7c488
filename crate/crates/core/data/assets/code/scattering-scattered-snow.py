def scattering_scattered_snow(nw):
    # geometry nodes for scattered snow
    out = nw.new_node("Group Output")
    return out
