def scattering_scattered_needles(nw):
    # geometry nodes for scattered needles
    out = nw.new_node("Group Output")
    return out
