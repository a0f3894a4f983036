"""Demo."""
import sys


def main():
    """Entry."""
    for i in range(len(sys.argv)):
        print(sys.argv[i])
