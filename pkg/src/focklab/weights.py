"""Radial weights h and their regularity diagnostics.

A weight is a C^2 function h on [0, inf) extended to the plane by
h(z) = h(|z|).  It defines the measure e^{-h} dm_2 and hence the whole
truncated space machinery downstream.  Two desk-scale checks live here:

* ``regularity_check`` measures log(t + |h'| + |h''|) / h(t) on a
  geometric grid and decides whether it is small and trending to zero,
  the finite-horizon stand-in for the little-o admissibility condition.
* ``oscillation_check`` measures how much h moves across a disc of the
  exponentially small radius e^{-eps*h(z)} around each sample point.

Derivatives are user-supplied and validated against finite differences;
double numerical differentiation is too noisy for the second-derivative
term in the regularity ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import NonpositiveWeight

__all__ = [
    "RadialWeight",
    "RegularityReport",
    "OscillationSample",
    "classical",
    "power",
    "slow_log",
    "constant",
    "from_table",
    "builtin_weights",
    "weight_from_spec",
    "derivative_consistency",
    "regularity_check",
    "oscillation_check",
]


@dataclass(frozen=True)
class RadialWeight:
    """Radial weight h with first and second derivatives.

    ``h``, ``h_prime``, ``h_second`` accept a float or ndarray of
    nonnegative radii and are vectorized.  ``classical_flag`` marks the
    Gaussian case h(r) = pi r^2, for which closed-form moments and
    kernels exist.  ``h_mp`` is an optional mpmath-compatible scalar
    evaluator enabling the extended-precision moment backend; built-in
    weights provide it, tabulated ones do not.
    """

    name: str
    h: Callable[[np.ndarray], np.ndarray]
    h_prime: Callable[[np.ndarray], np.ndarray]
    h_second: Callable[[np.ndarray], np.ndarray]
    classical_flag: bool = False
    h_mp: Callable | None = None

    def at(self, z) -> np.ndarray:
        """Evaluate the planar extension h(|z|) at complex z."""
        return self.h(np.abs(z))

    def __repr__(self) -> str:  # keep reports compact
        return f"RadialWeight({self.name!r})"


# ----------------------------------------------------------------------
# built-in weights
# ----------------------------------------------------------------------

def classical() -> RadialWeight:
    """The Gaussian weight h(r) = pi r^2."""
    import mpmath as mp

    return RadialWeight(
        name="pi*r^2",
        h=lambda r: math.pi * np.square(r),
        h_prime=lambda r: 2.0 * math.pi * np.asarray(r, dtype=float),
        h_second=lambda r: 2.0 * math.pi * np.ones_like(np.asarray(r, dtype=float)),
        classical_flag=True,
        h_mp=lambda r: mp.pi * r * r,
    )


def power(alpha: float, scale: float = 1.0) -> RadialWeight:
    """h(r) = scale * r^alpha for alpha >= 1."""
    if alpha < 1:
        raise ValueError("power weight needs alpha >= 1")

    def h(r):
        return scale * np.power(np.asarray(r, dtype=float), alpha)

    def hp(r):
        return scale * alpha * np.power(np.asarray(r, dtype=float), alpha - 1.0)

    def hpp(r):
        r = np.asarray(r, dtype=float)
        if alpha == 1:
            return np.zeros_like(r)
        if alpha == 2:
            return 2.0 * scale * np.ones_like(r)
        return scale * alpha * (alpha - 1.0) * np.power(r, alpha - 2.0)

    import mpmath as mp

    name = f"r^{alpha:g}" if scale == 1.0 else f"{scale:g}*r^{alpha:g}"
    return RadialWeight(
        name=name, h=h, h_prime=hp, h_second=hpp,
        h_mp=lambda r, a=mp.mpf(alpha), s=mp.mpf(scale): s * r ** a,
    )


def slow_log() -> RadialWeight:
    """h(r) = r^2 / (1 + log(1 + r)), a slowly growing admissible weight."""

    def h(r):
        r = np.asarray(r, dtype=float)
        return r * r / (1.0 + np.log1p(r))

    def hp(r):
        r = np.asarray(r, dtype=float)
        L = 1.0 + np.log1p(r)
        return 2.0 * r / L - r * r / ((1.0 + r) * L * L)

    def hpp(r):
        r = np.asarray(r, dtype=float)
        L = 1.0 + np.log1p(r)
        u = 1.0 + r
        return 2.0 / L - 4.0 * r / (u * L * L) + r * r * (L + 2.0) / (u * u * L ** 3)

    import mpmath as mp

    return RadialWeight(
        name="r^2/(1+log(1+r))", h=h, h_prime=hp, h_second=hpp,
        h_mp=lambda r: r * r / (1 + mp.log(1 + r)),
    )


def constant(c: float) -> RadialWeight:
    """Constant weight h = c. Fails regularity; kept for negative tests."""
    if c <= 0:
        raise ValueError("constant weight must be positive")

    def h(r):
        return c * np.ones_like(np.asarray(r, dtype=float))

    def zero(r):
        return np.zeros_like(np.asarray(r, dtype=float))

    return RadialWeight(name=f"const({c:g})", h=h, h_prime=zero, h_second=zero)


def from_table(path: str, name: str | None = None) -> RadialWeight:
    """Load a tabulated weight from CSV with header ``t,h,hp,hpp``.

    Each column is interpolated by a cubic spline; evaluation outside
    the tabulated range raises ValueError.
    """
    from scipy.interpolate import CubicSpline

    data = np.genfromtxt(path, delimiter=",", names=True)
    required = ("t", "h", "hp", "hpp")
    if data.dtype.names is None or tuple(data.dtype.names) != required:
        raise ValueError(f"weight table {path!r} must have header t,h,hp,hpp")
    t = np.asarray(data["t"], dtype=float)
    if t.size < 4 or np.any(np.diff(t) <= 0):
        raise ValueError("weight table needs at least 4 strictly increasing t values")
    splines = {c: CubicSpline(t, np.asarray(data[c], dtype=float)) for c in ("h", "hp", "hpp")}
    lo, hi = t[0], t[-1]

    def make(col):
        def f(r):
            r = np.asarray(r, dtype=float)
            if np.any(r < lo - 1e-12) or np.any(r > hi + 1e-12):
                raise ValueError(
                    f"tabulated weight {path!r} queried at r outside [{lo:g}, {hi:g}]"
                )
            return splines[col](np.clip(r, lo, hi))

        return f

    return RadialWeight(
        name=name or f"table:{path}",
        h=make("h"),
        h_prime=make("hp"),
        h_second=make("hpp"),
    )


def builtin_weights() -> dict[str, RadialWeight]:
    """Registry of shipped weights keyed by name used in configs."""
    return {
        "classical": classical(),
        "r^1": power(1.0),
        "r^2": power(2.0),
        "r^3": power(3.0),
        "slowlog": slow_log(),
    }


def weight_from_spec(spec: dict) -> RadialWeight:
    """Build a weight from a config mapping.

    Accepted kinds: ``classical``, ``power`` (fields alpha, scale),
    ``slowlog``, ``constant`` (field value), ``tabulated`` (field path).
    """
    kind = spec.get("kind")
    if kind == "classical":
        return classical()
    if kind == "power":
        return power(float(spec.get("alpha", 2.0)), float(spec.get("scale", 1.0)))
    if kind == "slowlog":
        return slow_log()
    if kind == "constant":
        return constant(float(spec.get("value", 1.0)))
    if kind == "tabulated":
        if "path" not in spec:
            raise ValueError("tabulated weight spec needs a 'path' field")
        return from_table(spec["path"])
    raise ValueError(f"unknown weight kind {kind!r}")


# ----------------------------------------------------------------------
# derivative consistency
# ----------------------------------------------------------------------

def derivative_consistency(
    w: RadialWeight,
    grid: Sequence[float] | None = None,
    rtol: float = 1e-6,
) -> tuple[bool, float]:
    """Compare supplied h', h'' with finite differences of h.

    Returns (ok, worst relative deviation).  h' uses a central
    difference, h'' a Richardson-extrapolated second difference; both
    are scaled by max(|h'|, |h''|, 1e-2) so that identically vanishing
    derivatives do not trip on rounding noise.
    """
    t = np.asarray(grid if grid is not None else np.linspace(0.5, 20.0, 25), dtype=float)
    hp, hpp = w.h_prime(t), w.h_second(t)
    scale = np.maximum(np.maximum(np.abs(hp), np.abs(hpp)), 1e-2)

    d1 = 1e-6 * np.maximum(1.0, t)
    fd1 = (w.h(t + d1) - w.h(t - d1)) / (2.0 * d1)

    def second(step):
        return (w.h(t + step) - 2.0 * w.h(t) + w.h(t - step)) / (step * step)

    d2 = 1e-3 * np.maximum(1.0, t)
    fd2 = (4.0 * second(d2 / 2.0) - second(d2)) / 3.0

    worst = max(
        float(np.max(np.abs(fd1 - hp) / scale)),
        float(np.max(np.abs(fd2 - hpp) / scale)),
    )
    return worst <= rtol, worst


# ----------------------------------------------------------------------
# regularity: log(t + |h'| + |h''|) = o(h)
# ----------------------------------------------------------------------

@dataclass
class RegularityReport:
    weight_name: str
    grid: np.ndarray
    ratios: np.ndarray
    verdict: bool
    tail_slope: float
    threshold: float

    def tail(self) -> np.ndarray:
        """Ratios over the last half of the grid."""
        return self.ratios[self.grid.size // 2 :]


def regularity_check(
    w: RadialWeight,
    t_max: float,
    n_points: int = 96,
    threshold: float = 0.1,
) -> RegularityReport:
    """Measure the admissibility ratio on a geometric grid in [1, t_max].

    Verdict is pass when the ratio at t_max is below ``threshold`` and
    the log-log slope fitted over the last half of the grid is negative
    (ratio trending down).  ``tail_slope`` is that fitted slope, i.e. an
    empirical decay exponent.
    """
    if t_max < 10:
        raise ValueError("regularity_check needs t_max >= 10")
    if n_points < 8:
        raise ValueError("regularity_check needs n_points >= 8")
    grid = np.geomspace(1.0, float(t_max), n_points)
    h = np.asarray(w.h(grid), dtype=float)
    if np.any(h <= 0):
        bad = grid[h <= 0][0]
        raise NonpositiveWeight(f"h(t) <= 0 at t = {bad:g}; ratio undefined")
    inner = grid + np.abs(w.h_prime(grid)) + np.abs(w.h_second(grid))
    ratios = np.log(inner) / h

    half = grid[grid.size // 2 :]
    tail = ratios[grid.size // 2 :]
    pos = tail > 0
    if np.count_nonzero(pos) >= 2:
        slope = float(np.polyfit(np.log(half[pos]), np.log(tail[pos]), 1)[0])
    else:
        # ratio already collapsed to <= 0 within rounding; treat as decayed
        slope = -np.inf
    verdict = bool(ratios[-1] < threshold and slope < 0)
    return RegularityReport(
        weight_name=w.name,
        grid=grid,
        ratios=ratios,
        verdict=verdict,
        tail_slope=slope,
        threshold=threshold,
    )


# ----------------------------------------------------------------------
# oscillation over exponentially small discs
# ----------------------------------------------------------------------

@dataclass
class OscillationSample:
    z: complex
    radius: float
    sup_diff: float
    flagged: bool
    note: str | None = None


_RING = np.exp(2j * np.pi * np.arange(16) / 16)
_INTERIOR = 0.5 * np.exp(2j * np.pi * (np.arange(8) + 0.5) / 8)


def oscillation_check(
    w: RadialWeight,
    z_samples: Sequence[complex],
    eps: float,
    threshold: float = 1e-3,
) -> list[OscillationSample]:
    """sup of |h(w) - h(z)| over probes in the disc D(z, e^{-eps h(z)}).

    Probes: 16 points on the bounding circle plus 8 interior points at
    half radius (h is radial, so the circle carries the extremes; the
    interior points guard against a broken radial extension).  A sample
    is flagged when the sup exceeds ``threshold`` although |z| >= 10.
    If the radius underflows to zero the sample passes vacuously with a
    diagnostic note.
    """
    if eps <= 0:
        raise ValueError("oscillation_check needs eps > 0")
    out = []
    for z in np.asarray(z_samples, dtype=complex):
        hz = float(w.at(z))
        radius = float(np.exp(-eps * hz))
        if radius == 0.0:
            out.append(
                OscillationSample(
                    z=complex(z),
                    radius=0.0,
                    sup_diff=0.0,
                    flagged=False,
                    note="underflow_radius: disc collapses below double precision",
                )
            )
            continue
        probes = np.concatenate([z + radius * _RING, z + radius * _INTERIOR])
        sup = float(np.max(np.abs(w.at(probes) - hz)))
        flagged = bool(sup > threshold and abs(z) >= 10.0)
        out.append(OscillationSample(z=complex(z), radius=radius, sup_diff=sup, flagged=flagged))
    return out
