def materials_painted_water(nw):
    # shader nodes for painted water
    out = nw.new_node("Group Output")
    return out
