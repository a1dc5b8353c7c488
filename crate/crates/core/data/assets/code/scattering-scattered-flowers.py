def scattering_scattered_flowers(nw):
    # geometry nodes for scattered flowers
    out = nw.new_node("Group Output")
    return out
