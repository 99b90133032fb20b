"""Exception taxonomy.

Every exception carries a stable machine-readable ``code`` so that CLI
reports can surface failures by identifier instead of Python class name.
"""


class FockLabError(Exception):
    """Base class for all package errors."""

    code = "error"


class NonpositiveWeight(FockLabError):
    code = "nonpositive_weight"


class UnderflowRadius(FockLabError):
    code = "underflow_radius"


class QuadratureNotConverged(FockLabError):
    code = "quadrature_not_converged"


class CutoffTooSmall(FockLabError):
    code = "cutoff_too_small"


class DimensionMismatch(FockLabError):
    code = "dimension_mismatch"


class ZeroNorm(FockLabError):
    code = "zero_norm"


class DuplicatePoints(FockLabError):
    code = "duplicate_points"


class NearDoubleZero(FockLabError):
    code = "near_double_zero"


class HypothesisViolated(FockLabError):
    code = "hypothesis_violated"


class ResidualTooLarge(FockLabError):
    code = "residual_too_large"


class NoOrthogonalVector(FockLabError):
    code = "no_orthogonal_vector"


class NoUsableIndex(FockLabError):
    code = "no_usable_index"


class OrthogonalityViolation(FockLabError):
    code = "orthogonality_violation"


class ConfigError(FockLabError):
    code = "config_parse"


class ConditioningWarning(UserWarning):
    """Emitted when an identity is asserted at a badly conditioned node set."""
