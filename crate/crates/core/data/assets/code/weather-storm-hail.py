def weather_storm_hail(nw):
    # geometry nodes for storm hail
    out = nw.new_node("Group Output")
    return out
