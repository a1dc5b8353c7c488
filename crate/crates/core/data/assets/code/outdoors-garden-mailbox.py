def outdoors_garden_mailbox(nw):
    # geometry nodes for garden mailbox
    out = nw.new_node("Group Output")
    return out
