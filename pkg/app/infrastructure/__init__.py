"""
Infrastructure layer containing external services and implementation details.
"""
