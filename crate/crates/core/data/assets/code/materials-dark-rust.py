def materials_dark_rust(nw):
    # shader nodes for dark rust
    out = nw.new_node("Group Output")
    return out
