"""
Built-in scenarios driving the verification suites.
"""
from app.domain.models import Scenario

REGULAR = "std:alpha=1"

# one weight per family, plus the unweighted case
WEIGHT_SUITE = (
    "std:alpha=0",
    "std:alpha=1",
    "logpow:alpha=1,beta=-1",
    "logpow:alpha=-1,beta=-2",
    "exp:alpha=0.5,beta=1",
    "osc:beta=-2",
    "sqstd:alpha=2",
)
BOX_SUITE = ("std:alpha=1", "logpow:alpha=1,beta=-1", "exp:alpha=0.5,beta=1")
KERNEL_ALPHAS = (0.0, 1.0, 2.5)

IDENTITY = Scenario(weight=REGULAR, name="identity")
HALF = Scenario(weight=REGULAR, phi="poly:0,0.5", name="half")

# p = q = 2, polynomial u and phi
POLYNOMIAL = (
    IDENTITY,
    HALF,
    Scenario(weight=REGULAR, phi="poly:0,0,1", name="square"),
    Scenario(weight=REGULAR, u="poly:0.5,0.5", phi="poly:0,0,1", name="mean_square"),
    Scenario(weight=REGULAR, u="poly:0,1", phi="poly:0.3,0.6", name="shift_affine"),
    Scenario(weight=REGULAR, u="poly:0.5,0.25", phi="poly:0,0,0.7", name="damped_square"),
)

# phi(D) inside 0.7 D
COMPACT = (
    HALF,
    Scenario(weight=REGULAR, phi="poly:0,0,0.7", name="small_square"),
    Scenario(weight=REGULAR, u="poly:0.5,0.5", phi="poly:0.1,0.5", name="small_affine"),
)

# polynomial scenarios with phi(D) inside 0.7 D for the Hilbert-Schmidt comparison
SCHATTEN = (
    HALF,
    Scenario(weight=REGULAR, u="poly:0.5,0.5", phi="poly:0,0,0.6", name="mean_small_square"),
)
TOEPLITZ = (
    Scenario(weight=REGULAR, u="poly:0.5,0.5", phi="poly:0,0,1", name="mean_square"),
    Scenario(weight=REGULAR, u="poly:0,1", phi="poly:0,0.5", name="shift_half"),
)

# q < p
MIXED = (
    Scenario(weight=REGULAR, phi="poly:0,0,1", mu="area", p=4.0, q=2.0, name="square_42"),
    Scenario(weight=REGULAR, phi="poly:0,0,1", mu="area", p=2.0, q=1.0, name="square_21"),
    Scenario(weight=REGULAR, phi="poly:0,0.5", mu="area", p=3.0, q=2.0, name="half_32"),
)

RESTRICTION_RADII = (0.6, 0.75, 0.9)
SCHATTEN_RADII = (0.3, 0.5)

BLASCHKE = ("blaschke:m=2", "blaschke:m=1;zeros=0.5", "blaschke:m=0;zeros=0.5,-0.3i")
MULTIPLIER_WEIGHTS = ("std:alpha=1", "logpow:alpha=1,beta=-1", "exp:alpha=0.5,beta=1")
CONDITION_WEIGHTS = ("std:alpha=1", "logpow:alpha=1,beta=-1", "exp:alpha=0.5,beta=1")
CONDITION_B_ALPHAS = (0.25, 0.5, 1.0)
