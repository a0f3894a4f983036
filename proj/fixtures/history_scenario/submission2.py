def stopped(done):
    return done == False
