"""
Application layer containing the numerical services.
"""
from .weight_service import WeightService
from .quadrature_service import QuadratureService
from .space_service import SpaceService
from .operator_service import OperatorService
from .oracle_service import OracleService
from .criteria_service import CriteriaService

__all__ = [
    'WeightService',
    'QuadratureService',
    'SpaceService',
    'OperatorService',
    'OracleService',
    'CriteriaService'
]
