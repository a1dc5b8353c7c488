def materials_polished_rust(nw):
    # shader nodes for polished rust
    out = nw.new_node("Group Output")
    return out
