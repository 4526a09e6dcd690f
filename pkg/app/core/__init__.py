"""
Core numerical logic and application services.
"""
