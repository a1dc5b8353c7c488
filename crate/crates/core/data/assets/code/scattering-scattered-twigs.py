def scattering_scattered_twigs(nw):
    # geometry nodes for scattered twigs
    out = nw.new_node("Group Output")
    return out
