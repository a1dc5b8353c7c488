def scattering_scattered_seashells(nw):
    # geometry nodes for scattered seashells
    out = nw.new_node("Group Output")
    return out
