"""
Result models: functional reports, matrix oracles and verification records.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np


def jsonable(value: Any) -> Any:
    """numpy scalars and arrays to plain JSON values; complex numbers become [re, im]."""
    if isinstance(value, complex) or isinstance(value, np.complexfloating):
        return [float(np.real(value)), float(np.imag(value))]
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.ndarray):
        return [jsonable(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


@dataclass
class FunctionalReport:
    """Value of a sup / limsup / integral functional with its diagnostics."""
    kind: str
    value: float
    witness: Any = None
    grid: Dict[str, Any] = field(default_factory=dict)
    levels: List[float] = field(default_factory=list)
    normalized_value: Optional[float] = None
    normalized_levels: List[float] = field(default_factory=list)
    flags: List[str] = field(default_factory=list)
    diagnostics: Dict[str, Any] = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def divergent(self) -> bool:
        return "divergent" in self.flags

    def to_dict(self) -> Dict[str, Any]:
        """Deterministic content; wall time lives in the timing sidecar."""
        return jsonable({
            "kind": self.kind,
            "value": self.value,
            "witness": self.witness,
            "grid": self.grid,
            "levels": self.levels,
            "normalized_value": self.normalized_value,
            "normalized_levels": self.normalized_levels,
            "flags": sorted(self.flags),
            "diagnostics": self.diagnostics,
        })

    def __repr__(self):
        return f"FunctionalReport({self.kind}, value={self.value:.6g})"


@dataclass(eq=False)
class MatrixOracle:
    """Truncated matrix of u C_phi in the orthonormal monomial basis."""
    N: int
    rows: int
    matrix: np.ndarray
    singular_values: np.ndarray
    warnings: List[str] = field(default_factory=list)

    @property
    def op_norm(self) -> float:
        return float(self.singular_values[0]) if self.singular_values.size else 0.0

    def schatten(self, p: float) -> float:
        return float(np.sum(self.singular_values ** p) ** (1.0 / p))

    @property
    def hilbert_schmidt_sq(self) -> float:
        return float(np.sum(self.singular_values ** 2))


@dataclass
class AssertionRecord:
    """One checked property with its bracket and signed margin."""
    name: str
    passed: bool
    value: Any = None
    lower: Optional[float] = None
    upper: Optional[float] = None
    detail: str = ""

    @property
    def margin(self) -> Optional[float]:
        """Log-distance to the nearest bracket edge; negative when failing."""
        if not isinstance(self.value, (int, float)) or isinstance(self.value, bool):
            return None
        value = float(self.value)
        margins = []
        if self.lower is not None:
            margins.append(np.log10(value / self.lower) if value > 0 and self.lower > 0 else value - self.lower)
        if self.upper is not None:
            margins.append(np.log10(self.upper / value) if value > 0 and self.upper > 0 else self.upper - value)
        return float(min(margins)) if margins else None

    def to_dict(self) -> Dict[str, Any]:
        return jsonable({
            "name": self.name,
            "passed": self.passed,
            "value": self.value,
            "lower": self.lower,
            "upper": self.upper,
            "margin": self.margin,
            "detail": self.detail,
        })


@dataclass
class SuiteSummary:
    """Pass/fail summary of one verification suite."""
    suite: str
    records: List[AssertionRecord] = field(default_factory=list)
    errors: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.errors and all(r.passed for r in self.records)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "assertions": [r.to_dict() for r in self.records],
            "errors": list(self.errors),
        }
