def scattering_scattered_pebbles(nw):
    # geometry nodes for scattered pebbles
    out = nw.new_node("Group Output")
    return out
