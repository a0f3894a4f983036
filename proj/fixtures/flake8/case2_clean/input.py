GREETING = "hello"
print(GREETING)
