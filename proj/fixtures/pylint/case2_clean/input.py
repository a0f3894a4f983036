"""Module docstring."""
VALUE = 1
