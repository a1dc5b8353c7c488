def weather_storm_cloud(nw):
    # geometry nodes for storm cloud
    out = nw.new_node("Group Output")
    return out
