def materials_weathered_paper(nw):
    # shader nodes for weathered paper
    out = nw.new_node("Group Output")
    return out
