"""
Numerical toolkit for weighted Bergman spaces induced by double weights.
"""
__version__ = "1.0.0"
