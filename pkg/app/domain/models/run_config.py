"""
Run configuration: grid sizes, assertion brackets and output options.
"""
from dataclasses import asdict, dataclass, field, replace
from typing import Any, Dict, Optional, Tuple

Bracket = Tuple[float, float]


@dataclass(frozen=True)
class GridConfig:
    """Numerical resolution of every sweep.

    `full()` is the documented default; `desk()` is the reduced preset that
    keeps each verification suite within seconds.
    """
    radial_levels: int = 12
    radial_subdivisions: int = 8
    quad_levels: int = 10
    quad_order: int = 8
    angular_base: int = 64
    angular_cap: int = 8192
    a_levels: int = 12
    a_angular_base: int = 64
    a_angular_cap: int = 4096
    tail_window: int = 3
    j0: int = 6
    outer_levels: int = 6
    outer_angular_cap: int = 256
    kernel_N: int = 512
    kernel_N_max: int = 8192
    oracle_N: int = 64
    fft_samples: int = 4096
    schatten_r: float = 0.5
    boundary_samples: int = 4096

    @classmethod
    def full(cls) -> "GridConfig":
        return cls()

    @classmethod
    def acceptance(cls) -> "GridConfig":
        return cls(quad_levels=12)

    @classmethod
    def desk(cls) -> "GridConfig":
        return cls(
            quad_levels=8,
            angular_base=32,
            angular_cap=1024,
            a_levels=8,
            a_angular_base=4,
            a_angular_cap=64,
            outer_levels=5,
            outer_angular_cap=128,
            kernel_N=256,
            oracle_N=24,
            fft_samples=1024,
            boundary_samples=1024,
        )

    @classmethod
    def preset(cls, name: str) -> "GridConfig":
        presets = {"full": cls.full, "acceptance": cls.acceptance, "desk": cls.desk}
        if name not in presets:
            from app.domain.errors import SpecError
            raise SpecError(f"Unknown grid preset: {name}")
        return presets[name]()

    def override(self, **changes: Any) -> "GridConfig":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


@dataclass(frozen=True)
class BracketConfig:
    """Default equivalence brackets; configuration values, not proven constants."""
    star_equivalence: Bracket = (0.1, 10.0)
    box_star: Bracket = (0.1, 10.0)
    test_point: Bracket = (0.05, 1.0)
    test_norm: Bracket = (0.2, 5.0)
    thm1_oracle: Bracket = (0.1, 10.0)
    hilbert_schmidt: Bracket = (1.0 / 20.0, 20.0)
    wide: Bracket = (0.01, 100.0)
    kn_constant: float = 10.0
    restricted_constant: float = 100.0
    thm6_ratio: float = 100.0
    condition_i: float = 10.0
    c1_minimum: float = 0.1
    multiplier_cap: float = 1e3
    compact_tail: float = 1e-3
    identity_tail: float = 0.2
    regular_spread: float = 50.0
    divergence_factor: float = 10.0

    def override(self, **changes: Any) -> "BracketConfig":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


@dataclass(frozen=True)
class RunConfig:
    """Everything a command needs; echoed canonically into each report."""
    command: str
    target: str = ""
    scenario: Optional[str] = None
    preset: str = "full"
    grid: GridConfig = field(default_factory=GridConfig)
    brackets: BracketConfig = field(default_factory=BracketConfig)
    gamma: Optional[float] = None
    radius: Optional[float] = None
    out_dir: str = "reports"
    workers: int = 1
    experimental: bool = False
    log_level: Optional[str] = None

    def canonical(self) -> Dict[str, Any]:
        """Sorted, JSON-ready echo; worker count and log level are excluded."""
        data = asdict(self)
        data.pop("workers")
        data.pop("log_level")
        data["brackets"] = {k: list(v) if isinstance(v, tuple) else v for k, v in data["brackets"].items()}
        return _sorted(data)


def _sorted(value: Any) -> Any:
    if isinstance(value, dict):
        return {k: _sorted(value[k]) for k in sorted(value)}
    if isinstance(value, (list, tuple)):
        return [_sorted(v) for v in value]
    return value
