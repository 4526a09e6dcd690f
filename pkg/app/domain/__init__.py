"""
Domain layer containing mathematical entities, interfaces and errors.
"""
