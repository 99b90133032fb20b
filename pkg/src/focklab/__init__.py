"""focklab: numerical laboratory for truncated radial weighted Fock spaces.

Finite polynomial truncations make reproducing kernels, biorthogonal
(Lagrange dual) families, planar Cauchy transforms, and the annihilator
transform of the completeness argument exactly computable; every
construction is checked two ways (algebraic moment sums and honest
quadrature) at desk scale.
"""

from .errors import (
    ConfigError,
    CutoffTooSmall,
    DimensionMismatch,
    DuplicatePoints,
    FockLabError,
    HypothesisViolated,
    NearDoubleZero,
    NonpositiveWeight,
    NoOrthogonalVector,
    NoUsableIndex,
    OrthogonalityViolation,
    QuadratureNotConverged,
    ResidualTooLarge,
    UnderflowRadius,
    ZeroNorm,
)
from .fockcore import CoeffFunction, TruncatedFockSpace, compute_moments
from .systems import PointSystem, biorthogonal, build_system, lagrange_reconstruct
from .weights import RadialWeight, classical, power, regularity_check, slow_log

__version__ = "0.1.0"
