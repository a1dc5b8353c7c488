def materials_rough_rust(nw):
    # shader nodes for rough rust
    out = nw.new_node("Group Output")
    return out
