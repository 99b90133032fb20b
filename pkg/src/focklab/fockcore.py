"""Dimension-N truncated model of a radial weighted Fock space.

Functions are polynomials of degree < N in the monomial basis.  Because
the weight is radial, monomials are orthogonal and the whole inner
product is encoded by the moment table

    m_n = integral over the plane of |z|^(2n) e^{-h(z)} dm_2
        = 2 pi * integral_0^inf r^(2n+1) e^{-h(r)} dr.

Moments are computed by composite Gauss-Legendre quadrature on [0, R]
with doubling refinement; the table is certified by two-level agreement
and the cutoff R is chosen so the largest integrand has decayed by a
factor 1e-18 from its peak.  Everything downstream (kernels, Gram
matrices, the annihilator transform) reduces to this table plus honest
re-quadrature cross-checks.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import CutoffTooSmall, DimensionMismatch, QuadratureNotConverged, ZeroNorm
from .weights import RadialWeight

__all__ = [
    "RadialRule",
    "TruncatedFockSpace",
    "CoeffFunction",
    "compute_moments",
    "inner_product",
    "norm",
    "kernel",
    "evaluate",
    "evaluate_derivative",
    "quadrature_norm_sq",
    "weighted_disc_rule",
    "growth_bound_check",
    "GrowthBoundReport",
    "radial_rule",
    "integrate_radial_powers",
    "tail_cutoff_radius",
    "space_to_dict",
    "coeffs_to_jsonable",
    "coeffs_from_jsonable",
]


# ----------------------------------------------------------------------
# radial quadrature
# ----------------------------------------------------------------------

@functools.lru_cache(maxsize=16)
def _leggauss(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


@dataclass(frozen=True)
class RadialRule:
    """Composite Gauss-Legendre rule on [0, R]."""

    nodes: np.ndarray
    weights: np.ndarray
    radius: float
    panels: int
    order: int


def radial_rule(radius: float, panels: int, order: int = 32, r_min: float = 0.0) -> RadialRule:
    """Equispaced composite GL rule on [r_min, radius]."""
    if radius <= r_min:
        raise ValueError("radial_rule needs radius > r_min")
    x, w = _leggauss(order)
    edges = np.linspace(r_min, radius, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return RadialRule(nodes=nodes, weights=weights, radius=float(radius), panels=panels, order=order)


def integrate_radial_powers(w: RadialWeight, powers: Sequence[int], rule: RadialRule) -> np.ndarray:
    """integral_0^R r^p e^{-h(r)} dr for each p, evaluated in log space."""
    p = np.asarray(powers, dtype=float)
    logr = np.log(rule.nodes)
    hvals = np.asarray(w.h(rule.nodes), dtype=float)
    vals = np.exp(p[:, None] * logr[None, :] - hvals[None, :])
    return vals @ rule.weights


def tail_cutoff_radius(
    w: RadialWeight,
    power: int,
    tail_cut: float = 1e-18,
    max_radius: float = 1e6,
) -> float:
    """Smallest R with r^power e^{-h(r)} at R below tail_cut times its peak.

    Scans a log grid for the peak of g(r) = power*log r - h(r), then
    bisects beyond the peak for the crossing of g_max + log(tail_cut).
    """
    r = np.geomspace(1e-6, max_radius, 4000)
    g = power * np.log(r) - np.asarray(w.h(r), dtype=float)
    imax = int(np.argmax(g))
    target = g[imax] + math.log(tail_cut)
    below = np.nonzero(g[imax:] <= target)[0]
    if below.size == 0:
        raise CutoffTooSmall(
            f"integrand r^{power} e^-h does not decay below {tail_cut:g} of its peak "
            f"by r = {max_radius:g}"
        )
    j = imax + below[0]
    lo, hi = r[max(j - 1, imax)], r[j]
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if power * math.log(mid) - float(w.h(mid)) <= target:
            hi = mid
        else:
            lo = mid
    return hi * 1.05


# ----------------------------------------------------------------------
# the truncated space
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class TruncatedFockSpace:
    """Immutable dim-N polynomial model with certified moment table."""

    weight: RadialWeight
    dim: int
    moments: np.ndarray
    cutoff_radius: float
    quad_rule: RadialRule

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("space dimension must be >= 1")
        if self.moments.shape != (self.dim,):
            raise DimensionMismatch("moment table length must equal dim")
        if np.any(self.moments <= 0):
            raise ValueError("moments must be positive")

    def __repr__(self) -> str:
        return (
            f"TruncatedFockSpace(weight={self.weight.name!r}, dim={self.dim}, "
            f"R={self.cutoff_radius:.3g})"
        )


def compute_moments(
    w: RadialWeight,
    N: int,
    rtol: float = 1e-10,
    tail_cut: float = 1e-18,
    order: int = 32,
    max_panels: int = 4096,
) -> TruncatedFockSpace:
    """Build the dim-N space: m_n = 2 pi int_0^R r^{2n+1} e^{-h} dr.

    Panels double until two successive refinement levels agree to
    ``rtol`` relatively on every moment; the finer rule is stored.
    """
    if N < 1:
        raise ValueError("compute_moments needs N >= 1")
    R = tail_cutoff_radius(w, 2 * N - 1, tail_cut=tail_cut)
    powers = 2 * np.arange(N) + 1

    panels = 32
    prev = integrate_radial_powers(w, powers, radial_rule(R, panels, order))
    while panels <= max_panels:
        panels *= 2
        rule = radial_rule(R, panels, order)
        cur = integrate_radial_powers(w, powers, rule)
        rel = np.max(np.abs(cur - prev) / np.maximum(np.abs(cur), 1e-300))
        if rel <= rtol:
            moments = 2.0 * math.pi * cur
            return TruncatedFockSpace(
                weight=w, dim=N, moments=moments, cutoff_radius=R, quad_rule=rule
            )
        prev = cur
    raise QuadratureNotConverged(
        f"moment refinement stalled above rtol={rtol:g} at {max_panels} panels"
    )


# ----------------------------------------------------------------------
# coefficient functions
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class CoeffFunction:
    """Polynomial represented by ascending monomial coefficients."""

    coeffs: np.ndarray
    space_dim: int

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        object.__setattr__(self, "coeffs", c)
        if c.shape != (self.space_dim,):
            raise DimensionMismatch(
                f"coefficient vector has length {c.shape}, expected ({self.space_dim},)"
            )

    @staticmethod
    def from_coeffs(coeffs, dim: int | None = None) -> "CoeffFunction":
        c = np.asarray(coeffs, dtype=complex)
        if dim is None:
            dim = c.size
        if c.size < dim:
            c = np.concatenate([c, np.zeros(dim - c.size, dtype=complex)])
        elif c.size > dim:
            if np.any(c[dim:] != 0):
                raise DimensionMismatch("nonzero coefficients beyond requested dimension")
            c = c[:dim]
        return CoeffFunction(coeffs=c, space_dim=dim)

    def pad_to(self, dim: int) -> "CoeffFunction":
        if dim < self.space_dim:
            raise DimensionMismatch("cannot pad to a smaller dimension")
        return CoeffFunction.from_coeffs(self.coeffs, dim)


def monomial(n: int, dim: int) -> CoeffFunction:
    c = np.zeros(dim, dtype=complex)
    c[n] = 1.0
    return CoeffFunction(coeffs=c, space_dim=dim)


def normalized_monomial(n: int, sp: TruncatedFockSpace) -> CoeffFunction:
    c = np.zeros(sp.dim, dtype=complex)
    c[n] = 1.0 / math.sqrt(sp.moments[n])
    return CoeffFunction(coeffs=c, space_dim=sp.dim)


def inner_product(f: CoeffFunction, g: CoeffFunction, sp: TruncatedFockSpace) -> complex:
    """<f, g> = sum_n a_n conj(b_n) m_n (monomials are orthogonal)."""
    if f.space_dim != sp.dim or g.space_dim != sp.dim:
        raise DimensionMismatch("inner_product arguments must live in the given space")
    return complex(np.sum(f.coeffs * np.conj(g.coeffs) * sp.moments))


def norm(f: CoeffFunction, sp: TruncatedFockSpace) -> float:
    return math.sqrt(max(inner_product(f, f, sp).real, 0.0))


def kernel(sp: TruncatedFockSpace, lam: complex) -> CoeffFunction:
    """Reproducing kernel k_lam with coefficients conj(lam)^n / m_n."""
    if abs(lam) > sp.cutoff_radius:
        raise ValueError(
            f"kernel point |lam|={abs(lam):g} outside the truncation disc R={sp.cutoff_radius:g}"
        )
    n = np.arange(sp.dim)
    return CoeffFunction(coeffs=np.conj(lam) ** n / sp.moments, space_dim=sp.dim)


def evaluate(f: CoeffFunction, z):
    """Polynomial evaluation (scalar or array argument)."""
    return npoly.polyval(z, f.coeffs)


def evaluate_derivative(f: CoeffFunction, z):
    return npoly.polyval(z, npoly.polyder(f.coeffs))


# ----------------------------------------------------------------------
# compensated evaluation
#
# Horner in doubles loses relative accuracy when the terms of the sum
# cancel heavily, e.g. kernel values e^{pi z conj(lam)} with strongly
# negative Re(z conj(lam)): terms reach e^{pi|z lam|} while the value is
# e^{pi Re(z lam)}.  A double-double Horner (error-free transformations,
# no FMA required) restores ~1e-15 relative accuracy at such points.
# ----------------------------------------------------------------------

_SPLITTER = 134217729.0  # 2**27 + 1


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _quick_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def _two_prod(a, b):
    p = a * b
    ca = _SPLITTER * a
    ahi = ca - (ca - a)
    alo = a - ahi
    cb = _SPLITTER * b
    bhi = cb - (cb - b)
    blo = b - bhi
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


def _dd_add(xh, xl, yh, yl):
    s, e = _two_sum(xh, yh)
    return _quick_two_sum(s, e + xl + yl)


def _dd_mul(xh, xl, yh, yl):
    p, e = _two_prod(xh, yh)
    return _quick_two_sum(p, e + xh * yl + xl * yh)


def evaluate_compensated(f: CoeffFunction, z):
    """Horner evaluation carried out in double-double arithmetic.

    Use where relative accuracy matters at cancellation-prone points;
    about an order of magnitude slower than ``evaluate``.
    """
    z = np.asarray(z, dtype=complex)
    zr, zi = np.real(z), np.imag(z)
    c = f.coeffs
    arh = np.full_like(zr, c[-1].real)
    arl = np.zeros_like(zr)
    aih = np.full_like(zr, c[-1].imag)
    ail = np.zeros_like(zr)
    for k in range(f.space_dim - 2, -1, -1):
        # (ar + i ai) * (zr + i zi)
        t1h, t1l = _dd_mul(arh, arl, zr, np.zeros_like(zr))
        t2h, t2l = _dd_mul(aih, ail, zi, np.zeros_like(zr))
        reh, rel = _dd_add(t1h, t1l, -t2h, -t2l)
        t3h, t3l = _dd_mul(arh, arl, zi, np.zeros_like(zr))
        t4h, t4l = _dd_mul(aih, ail, zr, np.zeros_like(zr))
        imh, iml = _dd_add(t3h, t3l, t4h, t4l)
        arh, arl = _dd_add(reh, rel, np.full_like(zr, c[k].real), np.zeros_like(zr))
        aih, ail = _dd_add(imh, iml, np.full_like(zr, c[k].imag), np.zeros_like(zr))
    out = (arh + arl) + 1j * (aih + ail)
    return complex(out) if out.ndim == 0 else out


# ----------------------------------------------------------------------
# planar quadrature over the truncation disc
# ----------------------------------------------------------------------

def weighted_disc_rule(
    sp: TruncatedFockSpace,
    angular_m: int | None = None,
    radial_panels: int | None = None,
    order: int | None = None,
):
    """Nodes/weights for integrals int F(zeta) e^{-h} dm_2 over the disc.

    The angular part is a uniform rule, exact for trigonometric
    polynomials of degree < M; the default M covers products of two
    polynomials of degree < dim.  Returns (zeta, wq) flat arrays with
    the radius Jacobian and e^{-h} folded into wq.
    """
    M = angular_m or (2 * sp.dim + 8)
    if radial_panels is None and order is None:
        rule = sp.quad_rule
    else:
        rule = radial_rule(
            sp.cutoff_radius,
            radial_panels or sp.quad_rule.panels,
            order or sp.quad_rule.order,
        )
    theta = 2.0 * np.pi * np.arange(M) / M
    zeta = rule.nodes[:, None] * np.exp(1j * theta)[None, :]
    ew = np.exp(-np.asarray(sp.weight.h(rule.nodes), dtype=float))
    wq = (rule.weights * rule.nodes * ew)[:, None] * (2.0 * np.pi / M)
    return zeta.ravel(), np.broadcast_to(wq, zeta.shape).ravel()


def quadrature_norm_sq(f: CoeffFunction, sp: TruncatedFockSpace) -> float:
    """Direct quadrature of int |f|^2 e^{-h} dm_2 (cross-checks the moment formula)."""
    zeta, wq = weighted_disc_rule(sp)
    vals = evaluate(f, zeta)
    return float(np.real(np.sum(wq * vals * np.conj(vals))))


# ----------------------------------------------------------------------
# growth bound
# ----------------------------------------------------------------------

@dataclass
class GrowthBoundReport:
    max_ratio: float
    argmax: complex
    interior: bool
    passed: bool
    eps: float

    def __str__(self) -> str:
        side = "interior" if self.interior else "edge"
        return f"max ratio {self.max_ratio:.6g} at z={self.argmax:.4g} ({side})"


def growth_bound_check(
    sp: TruncatedFockSpace,
    f: CoeffFunction,
    eps: float,
    grid: Sequence[complex],
    interior_fraction: float = 0.9,
) -> GrowthBoundReport:
    """Empirical constant in (|f| + |f'|) <= C e^{(1/2+eps) h} ||f||.

    Reports the max over the grid of the normalized ratio and whether
    the maximizer sits strictly inside the sampled radius range (a max
    on the rim suggests the bound is blowing up toward the truncation
    edge rather than being controlled).
    """
    z = np.asarray(grid, dtype=complex)
    if np.any(np.abs(z) > sp.cutoff_radius):
        raise ValueError("growth grid extends beyond the truncation disc")
    nf = norm(f, sp)
    if nf == 0.0:
        raise ZeroNorm("growth_bound_check needs a nonzero function")
    vals = np.abs(evaluate(f, z)) + np.abs(evaluate_derivative(f, z))
    ratios = vals * np.exp(-(0.5 + eps) * np.asarray(sp.weight.at(z), dtype=float)) / nf
    i = int(np.argmax(ratios))
    rmax = float(np.max(np.abs(z)))
    interior = bool(abs(z[i]) < interior_fraction * rmax) if rmax > 0 else True
    finite = bool(np.all(np.isfinite(ratios)))
    return GrowthBoundReport(
        max_ratio=float(ratios[i]),
        argmax=complex(z[i]),
        interior=interior,
        passed=finite and interior,
        eps=eps,
    )


# ----------------------------------------------------------------------
# extended-precision backend
#
# Moments stored as doubles limit kernel values to a relative accuracy
# of about u * e^{pi(|z lam| - Re(z conj lam))}, which blows past any
# fixed tolerance at strongly cancelling points.  The mpmath backend
# removes that ceiling: tanh-sinh moment quadrature at ``dps`` digits
# and a high-precision kernel sum.  Only weights that provide ``h_mp``
# support it.
# ----------------------------------------------------------------------

def hp_moments(w: RadialWeight, N: int, dps: int = 40, tail_cut: float = 1e-30) -> list:
    """Moment table as mpmath values (extended-precision backend)."""
    import mpmath as mp

    if w.h_mp is None:
        raise ValueError(f"weight {w.name!r} has no extended-precision evaluator")
    R = tail_cutoff_radius(w, 2 * N - 1, tail_cut=tail_cut)
    out = []
    with mp.workdps(dps):
        two_pi = 2 * mp.pi
        for n in range(N):
            p = 2 * n + 1
            out.append(
                mp.quad(lambda r: two_pi * r ** p * mp.e ** (-w.h_mp(r)), [0, mp.mpf(R)])
            )
    return out


def hp_kernel_value(moments_hp: list, lam: complex, z: complex, dps: int = 40) -> complex:
    """Truncated kernel value sum_n (z conj(lam))^n / m_n in high precision."""
    import mpmath as mp

    with mp.workdps(dps):
        x = mp.mpc(z) * mp.conj(mp.mpc(lam))
        acc = mp.mpc(0)
        p = mp.mpc(1)
        for n, m in enumerate(moments_hp):
            acc += p / m
            if n + 1 < len(moments_hp):
                p *= x
        return complex(acc)


def hp_truncation_error(moments_hp: list, lam: complex, z: complex, dps: int = 40) -> float:
    """|k_N(z, lam) - e^{pi z conj lam}| evaluated without double rounding.

    Only meaningful for the classical weight, whose kernel limit is the
    exponential; used to test the analytic remainder bound at depths
    where the remainder sits far below double resolution.
    """
    import mpmath as mp

    with mp.workdps(dps):
        x = mp.mpc(z) * mp.conj(mp.mpc(lam))
        acc = mp.mpc(0)
        p = mp.mpc(1)
        for n, m in enumerate(moments_hp):
            acc += p / m
            if n + 1 < len(moments_hp):
                p *= x
        return float(mp.fabs(acc - mp.e ** (mp.pi * x)))


def hp_cross_certify(sp: TruncatedFockSpace, moments_hp: list) -> float:
    """Worst relative deviation between the double and hp moment tables."""
    import mpmath as mp

    worst = 0.0
    for m_d, m_hp in zip(sp.moments, moments_hp):
        worst = max(worst, abs(float((mp.mpf(m_d) - m_hp) / m_hp)))
    return worst


# ----------------------------------------------------------------------
# serialization
# ----------------------------------------------------------------------

def space_to_dict(sp: TruncatedFockSpace) -> dict:
    return {
        "weight": sp.weight.name,
        "dim": sp.dim,
        "moments": [float(m) for m in sp.moments],
    }


def coeffs_to_jsonable(f: CoeffFunction) -> list[list[float]]:
    return [[float(c.real), float(c.imag)] for c in f.coeffs]


def coeffs_from_jsonable(pairs, dim: int | None = None) -> CoeffFunction:
    c = np.array([complex(re, im) for re, im in pairs], dtype=complex)
    return CoeffFunction.from_coeffs(c, dim)
