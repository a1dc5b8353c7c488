def outdoors_garden_gazebo(nw):
    # geometry nodes for garden gazebo
    out = nw.new_node("Group Output")
    return out
