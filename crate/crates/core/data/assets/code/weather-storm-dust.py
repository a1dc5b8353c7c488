def weather_storm_dust(nw):
    # geometry nodes for storm dust
    out = nw.new_node("Group Output")
    return out
