def materials_glossy_paper(nw):
    # shader nodes for glossy paper
    out = nw.new_node("Group Output")
    return out
