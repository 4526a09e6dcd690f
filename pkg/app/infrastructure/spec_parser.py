"""
Parsers for the weight, map and measure spec strings.
"""
import csv
import logging
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from app.core.families import FAMILIES, CustomSampledLaw
from app.domain.errors import MapValidationError, SpecError, WeightValidationError
from app.domain.models.analytic_map import (
    AffineMap, AnalyticMap, BlaschkeProduct, Composition, PolynomialMap, ReciprocalPower
)
from app.domain.models.measure import Measure
from app.domain.services.weight_law import WeightLaw

logger = logging.getLogger(__name__)

# density:<name> measures, densities with respect to dA
NAMED_DENSITIES: Dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "abs2": lambda z: np.abs(z) ** 2,
    "gap": lambda z: 1.0 - np.abs(z),
    "gap2": lambda z: (1.0 - np.abs(z)) ** 2,
    "halfplane": lambda z: (np.real(z) > 0).astype(float),
}
RADIAL_DENSITIES = {"abs2", "gap", "gap2"}


class SpecParser:
    """Turn spec strings into weight laws, analytic maps and measures."""

    @staticmethod
    def parse_weight(spec: str) -> WeightLaw:
        """
        Parse "std:alpha=1", "logpow:alpha=-1,beta=-2", "exp:alpha=0.5,beta=1",
        "osc", "sqstd:alpha=2" or "file:<path>".
        """
        tag, _, body = spec.strip().partition(":")
        tag = tag.strip().lower()
        if tag == "file":
            radii, values = SpecParser.read_weight_csv(body.strip())
            return CustomSampledLaw(radii, values, source=body.strip())
        if tag not in FAMILIES:
            raise WeightValidationError(f"Unknown weight family '{tag}' in '{spec}'")
        params = SpecParser._keyvalues(body, ",", spec)
        try:
            return FAMILIES[tag](**{k: float(v) for k, v in params.items()})
        except TypeError as e:
            raise WeightValidationError(f"Bad parameters for weight '{spec}': {e}")
        except ValueError as e:
            if isinstance(e, SpecError):
                raise
            raise WeightValidationError(f"Bad parameter value in weight '{spec}': {e}")

    @staticmethod
    def parse_map(spec: str, self_map: bool = False) -> AnalyticMap:
        """
        Parse "blaschke:m=1;zeros=0.5,0.3+0.2i", "poly:0.5,0.5", "affine:c0,c1",
        "recip:w=0.9;alpha=2" or "compose:<spec>|<spec>".

        Polynomial and affine maps are checked against the unit circle when
        `self_map` is set.
        """
        spec = spec.strip()
        tag, _, body = spec.partition(":")
        tag = tag.strip().lower()
        try:
            if tag == "blaschke":
                params = SpecParser._keyvalues(body, ";", spec)
                zeros = [parse_complex(v) for v in params.get("zeros", "").split(",") if v.strip()]
                unimodular = parse_complex(params["c"]) if "c" in params else 1.0
                return BlaschkeProduct(int(params.get("m", 0)), zeros, unimodular, spec=spec)
            if tag == "poly":
                coefficients = [parse_complex(v) for v in body.split(",") if v.strip()]
                return PolynomialMap(coefficients, self_map=self_map, spec=spec)
            if tag == "affine":
                parts = [parse_complex(v) for v in body.split(",")]
                if len(parts) != 2:
                    raise MapValidationError(f"Affine map needs two coefficients, got '{spec}'")
                return AffineMap(parts[0], parts[1], self_map=self_map, spec=spec)
            if tag == "recip":
                params = SpecParser._keyvalues(body, ";", spec)
                return ReciprocalPower(parse_complex(params["w"]), float(params["alpha"]), spec=spec)
            if tag == "compose":
                inner = [SpecParser.parse_map(part, self_map=self_map) for part in body.split("|")]
                return Composition(inner, spec=spec)
        except KeyError as e:
            raise MapValidationError(f"Map '{spec}' is missing parameter {e}")
        except ValueError as e:
            if isinstance(e, SpecError):
                raise
            raise MapValidationError(f"Bad value in map '{spec}': {e}")
        raise MapValidationError(f"Unknown map type '{tag}' in '{spec}'")

    @staticmethod
    def parse_measure(spec: str, profile_for: Callable[[Optional[str]], object]) -> Measure:
        """
        Parse "warea[:<weight-spec>]", "area", "zero", "atoms:<file.csv>" or
        "density:<name>".

        `profile_for(weight_spec)` returns the profile of a weight spec, or
        of the scenario weight when called with None.
        """
        spec = spec.strip()
        tag, _, body = spec.partition(":")
        tag = tag.strip().lower()
        if tag == "warea":
            profile = profile_for(body.strip() or None)
            weight = profile.source
            return Measure(label=f"warea:{weight.spec}", density=weight, profile=profile, radial=True)
        if tag == "area":
            return Measure(label="area", density=lambda z: np.ones(np.shape(z)), radial=True)
        if tag == "zero":
            return Measure(label="zero")
        if tag == "atoms":
            return Measure(label=spec, atoms=tuple(SpecParser.read_atoms_csv(body.strip())))
        if tag == "density":
            name = body.strip()
            if name not in NAMED_DENSITIES:
                raise SpecError(f"Unknown named density '{name}'; known: {sorted(NAMED_DENSITIES)}")
            return Measure(label=spec, density=NAMED_DENSITIES[name], radial=name in RADIAL_DENSITIES)
        raise SpecError(f"Unknown measure type '{tag}' in '{spec}'")

    @staticmethod
    def read_weight_csv(path: str) -> Tuple[np.ndarray, np.ndarray]:
        """Rows r,omega(r); a non-numeric first row is taken as a header."""
        rows = SpecParser._read_rows(path, 2)
        data = np.array(rows, dtype=float)
        if np.any(data[:, 1] <= 0):
            bad = data[data[:, 1] <= 0][0]
            raise WeightValidationError(f"Weight sample file {path} has a nonpositive value {bad[1]} at r={bad[0]}")
        return data[:, 0], data[:, 1]

    @staticmethod
    def read_atoms_csv(path: str) -> List[Tuple[complex, float]]:
        """Rows x,y,mass."""
        rows = SpecParser._read_rows(path, 3)
        return [(complex(x, y), float(m)) for x, y, m in rows]

    @staticmethod
    def _read_rows(path: str, width: int) -> List[List[float]]:
        file = Path(path)
        if not file.is_file():
            raise SpecError(f"File not found: {path}")
        rows = []
        with file.open(newline="") as handle:
            for index, row in enumerate(csv.reader(handle)):
                cells = [c.strip() for c in row if c.strip()]
                if not cells or cells[0].startswith("#"):
                    continue
                try:
                    values = [float(c) for c in cells]
                except ValueError:
                    if index == 0:
                        continue
                    raise SpecError(f"Non-numeric row {index + 1} in {path}: {row}")
                if len(values) != width:
                    raise SpecError(f"Row {index + 1} of {path} has {len(values)} columns, expected {width}")
                rows.append(values)
        if not rows:
            raise SpecError(f"No data rows in {path}")
        logger.debug(f"Read {len(rows)} rows from {path}")
        return rows

    @staticmethod
    def _keyvalues(body: str, separator: str, spec: str) -> Dict[str, str]:
        params = {}
        for item in body.split(separator):
            if not item.strip():
                continue
            key, eq, value = item.partition("=")
            if not eq:
                raise SpecError(f"Expected key=value in '{spec}', got '{item}'")
            params[key.strip().lower()] = value.strip()
        return params


def parse_complex(text: str) -> complex:
    """'0.3+0.2i' or '0.3+0.2j' or '-0.5'."""
    cleaned = text.strip().replace(" ", "").replace("i", "j")
    try:
        return complex(cleaned)
    except ValueError:
        raise SpecError(f"Cannot parse complex number '{text}'")
