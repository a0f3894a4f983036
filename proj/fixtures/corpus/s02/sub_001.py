value_0 = 0 
value_1 = 1 
