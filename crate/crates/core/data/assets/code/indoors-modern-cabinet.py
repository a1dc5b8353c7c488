def indoors_modern_cabinet(nw):
    # geometry nodes for modern cabinet
    out = nw.new_node("Group Output")
    return out
