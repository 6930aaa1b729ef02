#!/usr/bin/env python3
"""
frobrig - Main Entry Point
Run this file with a subcommand, e.g. `python run.py verify lemma-3.2 --p 3 --n 2`.
"""

import os
import sys

# Make the src package importable from any working directory
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.main import main

if __name__ == "__main__":
    sys.exit(main())
