def materials_light_paper(nw):
    # shader nodes for light paper
    out = nw.new_node("Group Output")
    return out
