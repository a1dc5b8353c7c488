def weather_storm_rain(nw):
    # geometry nodes for storm rain
    out = nw.new_node("Group Output")
    return out
