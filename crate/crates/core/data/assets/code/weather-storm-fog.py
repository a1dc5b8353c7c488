def weather_storm_fog(nw):
    # geometry nodes for storm fog
    out = nw.new_node("Group Output")
    return out
