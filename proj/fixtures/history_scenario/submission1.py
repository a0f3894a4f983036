def ready(flag):
    if flag == True:
        return 1
    return 0
