def weather_storm_lightning(nw):
    # geometry nodes for storm lightning
    out = nw.new_node("Group Output")
    return out
