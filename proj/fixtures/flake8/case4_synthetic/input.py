x=1 
