def materials_painted_paper(nw):
    # shader nodes for painted paper
    out = nw.new_node("Group Output")
    return out
