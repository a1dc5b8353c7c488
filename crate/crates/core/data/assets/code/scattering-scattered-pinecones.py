def scattering_scattered_pinecones(nw):
    # geometry nodes for scattered pinecones
    out = nw.new_node("Group Output")
    return out
