def materials_polished_paper(nw):
    # shader nodes for polished paper
    out = nw.new_node("Group Output")
    return out
