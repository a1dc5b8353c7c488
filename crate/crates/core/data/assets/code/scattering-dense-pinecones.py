def scattering_dense_pinecones(nw):
    # geometry nodes for dense pinecones
    out = nw.new_node("Group Output")
    return out
