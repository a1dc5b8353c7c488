def materials_painted_bark(nw):
    # shader nodes for painted bark
    out = nw.new_node("Group Output")
    return out
