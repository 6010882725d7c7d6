"""
CNOT-counted reversible arithmetic for Shor's algorithm
"""

__version__ = "1.0.0"
