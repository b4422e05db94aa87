import os
import sys

# make oracle_values importable regardless of how pytest is invoked
sys.path.insert(0, os.path.dirname(__file__))
