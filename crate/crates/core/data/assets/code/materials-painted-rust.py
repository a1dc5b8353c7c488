def materials_painted_rust(nw):
    # shader nodes for painted rust
    out = nw.new_node("Group Output")
    return out
