def materials_light_rust(nw):
    # shader nodes for light rust
    out = nw.new_node("Group Output")
    return out
