value_0 = 0
