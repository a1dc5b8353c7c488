def weather_storm_snowfall(nw):
    # geometry nodes for storm snowfall
    out = nw.new_node("Group Output")
    return out
