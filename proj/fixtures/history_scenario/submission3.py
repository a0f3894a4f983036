def check(flag, other):
    if flag == True:
        return 1
    if other == False:
        return 2
    return 0
