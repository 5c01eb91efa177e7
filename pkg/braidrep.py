#!/usr/bin/env python3
"""
braidrep command-line script

Usage:
    python braidrep.py verify I2(4)
    python braidrep.py nf --strands 4 --word "1 3 2 1 3 2"
    python braidrep.py scan "I2(2)" --bound 10
"""
import sys

from src.main import main

if __name__ == "__main__":
    sys.exit(main())
