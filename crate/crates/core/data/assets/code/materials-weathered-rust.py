def materials_weathered_rust(nw):
    # shader nodes for weathered rust
    out = nw.new_node("Group Output")
    return out
