def indoors_modern_bed(nw):
    # geometry nodes for modern bed
    out = nw.new_node("Group Output")
    return out
