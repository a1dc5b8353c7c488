def scattering_scattered_leaves(nw):
    # geometry nodes for scattered leaves
    out = nw.new_node("Group Output")
    return out
