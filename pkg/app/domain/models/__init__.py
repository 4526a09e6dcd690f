"""
Domain models representing weights, regions, maps, measures and reports.
"""
from .weight import Weight, WeightProfile, WeightClass, RadialGrid, TailConstants
from .analytic_map import (
    AnalyticMap, BlaschkeProduct, BlaschkeData, PolynomialMap, AffineMap,
    ReciprocalPower, Composition
)
from .regions import CarlesonBox, PseudoDisk, StolzRegion, Tent, WHOLE_DISK
from .measure import Measure, PushforwardSpec
from .space import TestFunction, KernelSeries, TaylorPolynomial, default_gamma
from .operator_spec import OperatorSpec, Scenario
from .report import FunctionalReport, MatrixOracle, AssertionRecord, SuiteSummary, jsonable
from .run_config import GridConfig, BracketConfig, RunConfig

__all__ = [
    'Weight', 'WeightProfile', 'WeightClass', 'RadialGrid', 'TailConstants',
    'AnalyticMap', 'BlaschkeProduct', 'BlaschkeData', 'PolynomialMap', 'AffineMap',
    'ReciprocalPower', 'Composition',
    'CarlesonBox', 'PseudoDisk', 'StolzRegion', 'Tent', 'WHOLE_DISK',
    'Measure', 'PushforwardSpec',
    'TestFunction', 'KernelSeries', 'TaylorPolynomial', 'default_gamma',
    'OperatorSpec', 'Scenario',
    'FunctionalReport', 'MatrixOracle', 'AssertionRecord', 'SuiteSummary', 'jsonable',
    'GridConfig', 'BracketConfig', 'RunConfig'
]
