"""Point systems, generating functions, and biorthogonal families.

In the dim-N truncation, any N distinct points carry a complete and
minimal kernel system.  The monic generating function G(z) = prod
(z - lam_j) has simple zeros exactly on the node set, and dividing out
one root at a time gives the dual (Lagrange) basis

    g_lam(z) = G(z) / (G'(lam) (z - lam)),

biorthogonal to the kernels:  <k_lam, g_mu> = delta.  Reconstruction of
any degree-<N polynomial from its node values is then a finite Lagrange
series.  Gram matrices and their smallest singular values quantify how
far a family is from degenerating, which is the finite-section face of
completeness/minimality questions.

Identity-type assertions downstream scale their tolerances by the node
Vandermonde condition number: interpolation at badly separated nodes is
exact mathematics on top of hopeless floating point.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import (
    ConditioningWarning,
    DimensionMismatch,
    DuplicatePoints,
    NearDoubleZero,
)
from .fockcore import CoeffFunction, TruncatedFockSpace, evaluate, inner_product, kernel

__all__ = [
    "PointSystem",
    "BiorthogonalFamily",
    "build_system",
    "biorthogonal",
    "lagrange_reconstruct",
    "gram_matrix",
    "completeness_defect",
    "perturb_and_track",
    "TrackRecord",
    "divide_out_root",
    "roots_of_unity",
    "disc_lattice",
    "random_disc_points",
    "points_from_csv",
    "points_from_spec",
]

_MIN_SEPARATION = 1e-10


def divide_out_root(coeffs: np.ndarray, root: complex) -> tuple[np.ndarray, complex]:
    """Synthetic division by (z - root): returns (quotient, remainder)."""
    c = np.asarray(coeffs, dtype=complex)
    n = c.size - 1
    q = np.empty(n, dtype=complex)
    acc = c[n]
    for k in range(n - 1, -1, -1):
        q[k] = acc
        acc = c[k] + root * acc
    return q, complex(acc)


@dataclass(frozen=True)
class PointSystem:
    """Node set with its monic generating function and diagnostics."""

    points: np.ndarray
    space: TruncatedFockSpace
    gen_coeffs: np.ndarray  # ascending, degree N, monic
    gen_derivs: np.ndarray  # G'(lam_j)
    cond_estimate: float

    @property
    def separation(self) -> float:
        d = np.abs(self.points[:, None] - self.points[None, :])
        np.fill_diagonal(d, np.inf)
        return float(d.min()) if self.points.size > 1 else np.inf


def build_system(points: Sequence[complex], sp: TruncatedFockSpace) -> PointSystem:
    """Expand G = prod (z - lam_j), compute G'(lam_j), estimate conditioning."""
    pts = np.asarray(points, dtype=complex)
    if pts.ndim != 1 or pts.size != sp.dim:
        raise DimensionMismatch(
            f"need exactly dim={sp.dim} points, got {pts.size}"
        )
    if pts.size > 1:
        d = np.abs(pts[:, None] - pts[None, :])
        np.fill_diagonal(d, np.inf)
        if d.min() <= _MIN_SEPARATION:
            i, j = np.unravel_index(np.argmin(d), d.shape)
            raise DuplicatePoints(
                f"points {i} and {j} are {d.min():.3g} apart (min {_MIN_SEPARATION:g})"
            )

    gen = npoly.polyfromroots(pts)
    derivs = npoly.polyval(pts, npoly.polyder(gen))

    n = pts.size
    residual = np.abs(npoly.polyval(pts, gen))
    scale = np.max(np.abs(gen)) * np.maximum(1.0, np.abs(pts)) ** n
    if np.any(residual > 1e-10 * scale):
        raise ValueError("generating function does not vanish on its own nodes to tolerance")

    dscale = max(1.0, float(np.max(np.abs(derivs))))
    if np.any(np.abs(derivs) <= 1e-12 * dscale):
        raise NearDoubleZero("G' vanishes at a node beyond double-precision resolution")

    vand = np.vander(pts, n, increasing=True)
    cond = float(np.linalg.cond(vand))
    return PointSystem(
        points=pts, space=sp, gen_coeffs=gen, gen_derivs=derivs, cond_estimate=cond
    )


@dataclass(frozen=True)
class BiorthogonalFamily:
    functions: tuple
    source: PointSystem

    def __iter__(self):
        return iter(self.functions)

    def __len__(self):
        return len(self.functions)

    def __getitem__(self, i):
        return self.functions[i]


def biorthogonal(ps: PointSystem, near_zero_rtol: float = 1e-8) -> BiorthogonalFamily:
    """Dual basis g_lam = G / (G'(lam)(z - lam)) via synthetic division."""
    dscale = max(1.0, float(np.max(np.abs(ps.gen_derivs))))
    fns = []
    for lam, gp in zip(ps.points, ps.gen_derivs):
        if abs(gp) <= near_zero_rtol * dscale:
            raise NearDoubleZero(
                f"|G'({lam:.6g})| = {abs(gp):.3g} signals nearly coalescing nodes"
            )
        q, _ = divide_out_root(ps.gen_coeffs, lam)
        fns.append(CoeffFunction(coeffs=q / gp, space_dim=ps.space.dim))
    return BiorthogonalFamily(functions=tuple(fns), source=ps)


def lagrange_reconstruct(f: CoeffFunction, ps: PointSystem) -> CoeffFunction:
    """sum_lam f(lam) g_lam; equals f up to conditioning-amplified rounding."""
    if f.space_dim != ps.space.dim:
        raise DimensionMismatch("function does not live in the system's space")
    if ps.cond_estimate > 1e12:
        warnings.warn(
            f"node Vandermonde condition {ps.cond_estimate:.3g}; "
            "reconstruction accuracy is not guaranteed",
            ConditioningWarning,
            stacklevel=2,
        )
    family = biorthogonal(ps)
    vals = evaluate(f, ps.points)
    acc = np.zeros(ps.space.dim, dtype=complex)
    for v, g in zip(vals, family):
        acc += v * g.coeffs
    return CoeffFunction(coeffs=acc, space_dim=ps.space.dim)


def gram_matrix(family: Sequence[CoeffFunction], sp: TruncatedFockSpace) -> np.ndarray:
    """Hermitian Gram matrix of the family in the space inner product."""
    if len(family) == 0:
        raise ValueError("gram_matrix needs a nonempty family")
    for f in family:
        if f.space_dim != sp.dim:
            raise DimensionMismatch("family member does not live in the given space")
    F = np.stack([f.coeffs for f in family])
    return (F * sp.moments[None, :]) @ F.conj().T


def completeness_defect(
    family: Sequence[CoeffFunction], sp: TruncatedFockSpace, rel_cut: float = 1e-10
) -> tuple[float, int]:
    """(smallest singular value, numerical null dimension) of the Gram."""
    sv = np.linalg.svd(gram_matrix(family, sp), compute_uv=False)
    null_dim = int(np.count_nonzero(sv < rel_cut * sv.max()))
    return float(sv.min()), null_dim


@dataclass
class TrackRecord:
    sigma_min: float
    cond_estimate: float


def _normalized_kernel_gram(ps: PointSystem) -> np.ndarray:
    ks = [kernel(ps.space, lam) for lam in ps.points]
    g = np.array(
        [[inner_product(ki, kj, ps.space) for kj in ks] for ki in ks], dtype=complex
    )
    d = np.sqrt(np.real(np.diag(g)))
    return g / np.outer(d, d)

def perturb_and_track(ps: PointSystem, schedule: Sequence[np.ndarray]) -> list[TrackRecord]:
    """Apply point offsets step by step, rebuild, record stability diagnostics.

    sigma_min is the smallest singular value of the normalized kernel
    Gram at the perturbed nodes; it collapses to zero when nodes
    coalesce and is invariant under rigid rotations for radial weights.
    Build failures (e.g. coalescence below the distinctness floor)
    propagate to the caller.
    """
    out = []
    for offsets in schedule:
        moved = build_system(ps.points + np.asarray(offsets, dtype=complex), ps.space)
        sv = np.linalg.svd(_normalized_kernel_gram(moved), compute_uv=False)
        out.append(TrackRecord(sigma_min=float(sv.min()), cond_estimate=moved.cond_estimate))
    return out


# ----------------------------------------------------------------------
# node-set generators
# ----------------------------------------------------------------------

def roots_of_unity(n: int, radius: float = 1.0) -> np.ndarray:
    return radius * np.exp(2j * np.pi * np.arange(n) / n)


def disc_lattice(n: int, spacing: float = 1.0) -> np.ndarray:
    """First n points of the square lattice spacing*(j + i k), sorted by
    (|z|, arg): the natural complete-minimal candidates for Fock-type
    spaces."""
    m = int(np.ceil(np.sqrt(n))) + 2
    j, k = np.meshgrid(np.arange(-m, m + 1), np.arange(-m, m + 1))
    pts = spacing * (j.ravel() + 1j * k.ravel())
    order = np.lexsort((np.round(np.angle(pts), 12), np.round(np.abs(pts), 12)))
    return pts[order][:n]


def random_disc_points(n: int, radius: float, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, n))
    th = rng.uniform(0.0, 2.0 * np.pi, n)
    return r * np.exp(1j * th)


def points_from_csv(path: str) -> np.ndarray:
    data = np.genfromtxt(path, delimiter=",", names=True)
    if data.dtype.names is None or tuple(data.dtype.names) != ("re", "im"):
        raise ValueError(f"point CSV {path!r} must have header re,im")
    return np.atleast_1d(data["re"]) + 1j * np.atleast_1d(data["im"])


def points_from_spec(spec: dict, n: int, seed: int = 0) -> np.ndarray:
    """Build a node set from a config mapping; see the CLI docs."""
    kind = spec.get("kind")
    if kind == "lattice":
        return disc_lattice(n, float(spec.get("scale", 1.0)))
    if kind == "roots_of_unity":
        return roots_of_unity(n, float(spec.get("radius", 1.0)))
    if kind == "random":
        return random_disc_points(n, float(spec.get("radius", 2.0)), int(spec.get("seed", seed)))
    if kind == "list":
        return np.array([complex(re, im) for re, im in spec["values"]], dtype=complex)
    if kind == "csv":
        return points_from_csv(spec["path"])
    raise ValueError(f"unknown point-set kind {kind!r}")
