def materials_rough_paper(nw):
    # shader nodes for rough paper
    out = nw.new_node("Group Output")
    return out
