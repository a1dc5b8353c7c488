def materials_rough_concrete(nw):
    # shader nodes for rough concrete
    out = nw.new_node("Group Output")
    return out
