def scattering_scattered_grass(nw):
    # geometry nodes for scattered grass
    out = nw.new_node("Group Output")
    return out
