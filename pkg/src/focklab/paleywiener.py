"""Band-limited analogue of the completeness experiment.

Functions band-limited to (-pi, pi) are represented by their integer
samples: the shifted sinc functions form an orthonormal basis, so inner
products are plain sample sums and no quadrature enters.  The special
function

    S(z) = sin(pi z) / (z (z^2 - 1))

vanishes at every integer except {0, 1, -1} (where the zeros of sin are
eaten by the denominator), decays cubically on the real line, and
generates the punctured family {S(z)/(z - mu)} over integers |mu| >= 2.
Finite sections of that family always have a formal defect of exactly 3
(each pairing equation determines the sample at mu from the samples at
0, 1, -1), so completeness manifests not as a vanishing defect but as
the null vectors being expelled from the low modes as the section
grows; ``pw_completeness_sweep`` measures exactly that.

A real-line analogue of the annihilator transform closes the loop:
Q(z) = int (G(z)S(t) - G(t)S(z)) / (t - z) conj(H(t)) dt with a closed
form G and sampled H.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DimensionMismatch

__all__ = [
    "PWFunction",
    "sinc_basis",
    "pw_inner",
    "pw_norm",
    "pw_gram",
    "sample_interpolate",
    "S_eval",
    "S_prime",
    "S_prime_at_integer",
    "punctured_system",
    "pw_completeness_sweep",
    "PWSweepRecord",
    "PWClosedForm",
    "sin_pi_closed_form",
    "pw_q_transform",
    "PWQResult",
]


# ----------------------------------------------------------------------
# sampled band-limited functions
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class PWFunction:
    """Integer samples f(n), n in [-M, M]; index n + M into ``samples``."""

    samples: np.ndarray
    M: int

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=complex)
        object.__setattr__(self, "samples", s)
        if s.shape != (2 * self.M + 1,):
            raise DimensionMismatch(
                f"need {2 * self.M + 1} samples for half-width {self.M}, got {s.shape}"
            )

    def at_integer(self, n: int) -> complex:
        return complex(self.samples[n + self.M])


def sinc_basis(M: int, n: int) -> PWFunction:
    """The shifted sinc sin(pi(t-n))/(pi(t-n)) as a sample vector."""
    s = np.zeros(2 * M + 1, dtype=complex)
    s[n + M] = 1.0
    return PWFunction(samples=s, M=M)


def pw_inner(f: PWFunction, g: PWFunction) -> complex:
    if f.M != g.M:
        raise DimensionMismatch("sample half-widths differ")
    return complex(np.sum(f.samples * np.conj(g.samples)))


def pw_norm(f: PWFunction) -> float:
    return math.sqrt(max(pw_inner(f, f).real, 0.0))


def pw_gram(family: Sequence[PWFunction]) -> np.ndarray:
    F = np.stack([f.samples for f in family])
    return F @ F.conj().T


def sample_interpolate(f: PWFunction, t) -> np.ndarray:
    """Shannon interpolation sum_n f(n) sinc(t - n) at real t."""
    t = np.asarray(t, dtype=float)
    n = np.arange(-f.M, f.M + 1)
    return np.sinc(t[..., None] - n) @ f.samples


# ----------------------------------------------------------------------
# the function S
# ----------------------------------------------------------------------

def _sinpi(z):
    """sin(pi z) with argument reduction: exactly zero at integers."""
    z = np.asarray(z)
    m = np.round(np.real(z))
    return np.where(m.astype(int) % 2 == 0, 1.0, -1.0) * np.sin(np.pi * (z - m))


def _cospi(z):
    z = np.asarray(z)
    m = np.round(np.real(z))
    return np.where(m.astype(int) % 2 == 0, 1.0, -1.0) * np.cos(np.pi * (z - m))


_SPECIAL = (0.0, 1.0, -1.0)
_SERIES_RADIUS = 1e-4


def _sinc_series(u):
    """sin(pi u)/u as a 4-term even series; |u| <= 1e-4 keeps it to ~1e-33."""
    u2 = u * u
    return math.pi * (
        1.0
        - (math.pi ** 2 / 6.0) * u2
        + (math.pi ** 4 / 120.0) * u2 * u2
        - (math.pi ** 6 / 5040.0) * u2 * u2 * u2
    )


def S_eval(z):
    """S(z) = sin(pi z)/(z(z^2-1)); removable points 0, +-1 via local series."""
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    out = np.empty(z.shape, dtype=complex)
    handled = np.zeros(z.shape, dtype=bool)
    for p in _SPECIAL:
        near = (np.abs(z - p) < _SERIES_RADIUS) & ~handled
        if np.any(near):
            u = z[near] - p
            sign = 1.0 if int(p) % 2 == 0 else -1.0
            denom = np.ones_like(u)
            for q in _SPECIAL:
                if q != p:
                    denom = denom * (z[near] - q)
            out[near] = sign * _sinc_series(u) / denom
            handled |= near
    rest = ~handled
    if np.any(rest):
        zz = z[rest]
        out[rest] = _sinpi(zz) / (zz * (zz * zz - 1.0))
    return complex(out[0]) if scalar else out


def S_prime(t):
    """S'(t) for real t by a complex step (S is real-analytic on the line)."""
    h = 1e-20
    return np.imag(S_eval(np.asarray(t, dtype=float) + 1j * h)) / h


def S_prime_at_integer(mu: int) -> float:
    """S'(mu) = pi (-1)^mu / (mu (mu^2 - 1)) for integer |mu| >= 2."""
    if abs(mu) < 2:
        raise ValueError("closed form holds at the simple zeros |mu| >= 2")
    return math.pi * (1.0 if mu % 2 == 0 else -1.0) / (mu * (mu * mu - 1.0))


# ----------------------------------------------------------------------
# the punctured family and its finite sections
# ----------------------------------------------------------------------

def punctured_system(M: int) -> list[tuple[int, PWFunction]]:
    """{S/(. - mu)} for integer 2 <= |mu| <= M as sample vectors.

    At n = mu the removable singularity takes the value S'(mu); at all
    other integers the value S(n)/(n - mu) is supported on {0, 1, -1}.
    """
    if M < 2:
        raise ValueError("punctured system needs M >= 2")
    n = np.arange(-M, M + 1)
    s_at_n = np.real(S_eval(n.astype(float)))
    out = []
    for mu in range(-M, M + 1):
        if abs(mu) < 2:
            continue
        with np.errstate(divide="ignore", invalid="ignore"):
            vals = s_at_n / (n - mu)
        vals[n == mu] = S_prime_at_integer(mu)
        out.append((mu, PWFunction(samples=vals.astype(complex), M=M)))
    return out


@dataclass
class PWSweepRecord:
    M: int
    sigma_min: float
    null_dim: int
    low_mode_null_norm: float


def pw_completeness_sweep(
    M_values: Sequence[int], low_mode_cut: int = 5, rel_cut: float = 1e-10
) -> list[PWSweepRecord]:
    """Defect of finite sections of the punctured family per half-width.

    ``sigma_min`` is the smallest Gram eigenvalue of the family,
    ``null_dim`` the dimension of the orthogonal complement of its span
    inside the sample space, and ``low_mode_null_norm`` the operator
    norm of the restriction of the null-space projector to samples
    |n| <= low_mode_cut.  Completeness of the infinite family shows up
    as the last quantity decaying as M grows.
    """
    out = []
    for M in M_values:
        fam = punctured_system(M)
        V = np.stack([f.samples for _, f in fam]).real
        u, sv, vh = np.linalg.svd(V, full_matrices=True)
        rank = int(np.count_nonzero(sv > rel_cut * sv.max()))
        null_dim = (2 * M + 1) - rank
        null_basis = vh[rank:]
        n = np.arange(-M, M + 1)
        low = null_basis[:, np.abs(n) <= low_mode_cut]
        low_norm = float(np.linalg.svd(low, compute_uv=False).max()) if low.size else 0.0
        out.append(
            PWSweepRecord(
                M=M,
                sigma_min=float(sv.min() ** 2),
                null_dim=null_dim,
                low_mode_null_norm=low_norm,
            )
        )
    return out


# ----------------------------------------------------------------------
# the real-line annihilator transform
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class PWClosedForm:
    """Generating function given in closed form with derivative and a
    bound on the real line."""

    fn: Callable
    dfn: Callable
    sup_real: float
    label: str = "G"


def sin_pi_closed_form() -> PWClosedForm:
    return PWClosedForm(
        fn=lambda t: _sinpi(t),
        dfn=lambda t: math.pi * _cospi(t),
        sup_real=1.0,
        label="sin(pi z)",
    )


@dataclass
class PWQResult:
    z: np.ndarray
    q: np.ndarray
    t_max: float
    tail_bound: float


def pw_q_transform(
    G: PWClosedForm,
    H: PWFunction,
    z_grid: Sequence[complex],
    t_max: float | None = None,
    panel_len: float = 0.5,
    order: int = 16,
    switch_radius: float = 1e-6,
    hole_radius: float = 0.0,
) -> PWQResult:
    """Q(z) = int (G(z)S(t) - G(t)S(z)) / (t - z) conj(H(t)) dt on [-T, T].

    The difference quotient is smooth; within ``switch_radius`` of t = z
    it is replaced by its limit G(z)S'(t) - G'(t)S(z).  A positive
    ``hole_radius`` instead drops the window |t - z| < hole entirely
    (used to certify the removability numerically).  The reported tail
    bound uses the cubic decay of S and the sample-sum bound on H.
    """
    z = np.asarray(z_grid, dtype=complex)
    T = t_max if t_max is not None else 10.0 * max(1.0, float(np.max(np.abs(z))))
    panels = max(8, int(math.ceil(2.0 * T / panel_len)))
    x, wts = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(-T, T, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    t = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    w = (half[:, None] * wts[None, :]).ravel()

    s_t = np.real(S_eval(t))
    g_t = np.real(np.asarray(G.fn(t)))
    hbar = np.conj(sample_interpolate(H, t))
    sp_t = None

    q = np.empty(z.shape, dtype=complex)
    for i, zz in enumerate(z):
        s_z = S_eval(zz)
        g_z = complex(np.asarray(G.fn(zz)).reshape(()))
        num = g_z * s_t - g_t * s_z
        dt = t - zz
        with np.errstate(divide="ignore", invalid="ignore"):
            quot = num / dt
        close = np.abs(dt) < switch_radius
        if np.any(close):
            if sp_t is None:
                sp_t = S_prime(t)
            limit = g_z * sp_t[close] - np.asarray(G.dfn(t[close])) * s_z
            quot[close] = limit
        if hole_radius > 0.0:
            quot[np.abs(dt) < hole_radius] = 0.0
        q[i] = np.sum(w * quot * hbar)

    h1 = float(np.sum(np.abs(H.samples)))
    az = np.abs(z)
    s_z_abs = np.abs(S_eval(z))
    g_z_abs = np.abs(np.asarray(G.fn(z), dtype=complex))
    piece1 = g_z_abs * 1.2 * h1 * 2.0 / np.maximum((T - az) * T * T, 1e-300)
    cmax = np.maximum(az, float(H.M))
    piece2 = s_z_abs * G.sup_real * h1 / math.pi / np.maximum(T - cmax, 1e-300)
    tail = float(np.max(piece1 + piece2))
    return PWQResult(z=z, q=q, t_max=T, tail_bound=tail)
