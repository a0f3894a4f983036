def f():
    x = 3
    return 1
