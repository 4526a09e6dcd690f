"""
Service interfaces for domain operations.
"""
from .weight_law import WeightLaw
from .disk_integrator import DiskIntegrator, Integrand

__all__ = [
    'WeightLaw',
    'DiskIntegrator',
    'Integrand'
]
