def scattering_scattered_sand(nw):
    # geometry nodes for scattered sand
    out = nw.new_node("Group Output")
    return out
