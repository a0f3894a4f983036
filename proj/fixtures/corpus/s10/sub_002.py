value_0 = 0 
value_1 = 1 
value_2 = 2 
value_3 = 3 
value_4 = 4 
value_5 = 5 
value_6 = 6 
value_7 = 7 
