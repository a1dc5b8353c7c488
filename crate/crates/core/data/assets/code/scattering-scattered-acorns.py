def scattering_scattered_acorns(nw):
    # geometry nodes for scattered acorns
    out = nw.new_node("Group Output")
    return out
