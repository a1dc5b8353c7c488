def materials_glossy_rust(nw):
    # shader nodes for glossy rust
    out = nw.new_node("Group Output")
    return out
