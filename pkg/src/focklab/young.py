"""Completeness stress test for biorthogonal families.

Given a node system with generating function G and a candidate vector H
orthogonal to the whole dual family {g_lam}, form

    Q(z) = int (G(z)P(zeta) - G(zeta)P(z)) / (z - zeta)
               * conj(H(zeta)) e^{-h(zeta)} dm_2(zeta),

where P is a polynomial of degree n+1 with simple zeros w_1..w_{n+1}
off the node set and n is an index with <H, z^n> != 0.  Q vanishes on
the node set, so Q = G T; if T were identically zero then H would be
orthogonal to every P/(w_j - .), hence to z^n, a contradiction.  The
experiment machinery here realizes every step of that argument at a
fixed truncation and cross-checks each integral two ways:

*   exact moment sums (the zeta-integrand is polynomial * conj(poly)
    * e^{-h}, so each integral collapses onto the moment table);
*   honest 2-D polar quadrature over the truncation disc.

In the dim-N truncation the dual family spans all polynomials of
degree < N, so the orthogonal complement inside dim N+d is exactly the
span of z^N .. z^{N+d-1}; consequently n >= N, deg P >= N+1, and T is
a polynomial of degree n - N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .cauchy import (
    DensityFunction,
    planar_cauchy,
    poly_weighted_density,
    weighted_poly_cauchy,
)
from .errors import (
    NoOrthogonalVector,
    NoUsableIndex,
    OrthogonalityViolation,
    ResidualTooLarge,
)
from .fockcore import (
    CoeffFunction,
    TruncatedFockSpace,
    compute_moments,
    evaluate,
    inner_product,
    norm,
    radial_rule,
)
from .systems import PointSystem, biorthogonal, divide_out_root

__all__ = [
    "YoungInstance",
    "QResult",
    "TFactorReport",
    "ContradictionReport",
    "SplitBoundReport",
    "orthogonal_complement_basis",
    "make_instance",
    "instance_from_H",
    "q_transform",
    "factor_T",
    "contradiction_check",
    "a1_a2_bounds",
    "lemma3_density",
    "lemma4_density",
]

_GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


# ----------------------------------------------------------------------
# instance construction
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class YoungInstance:
    system: PointSystem
    ambient: TruncatedFockSpace       # dim N + d, holds H
    big: TruncatedFockSpace           # slightly larger table for norm checks
    H: CoeffFunction                  # unit vector orthogonal to the dual family
    P: CoeffFunction                  # monic annihilator polynomial, degree n+1
    n_index: int
    P_zeros: np.ndarray
    d: int
    seed: int

    @property
    def weight(self):
        return self.system.space.weight


def orthogonal_complement_basis(ps: PointSystem, ambient: TruncatedFockSpace) -> np.ndarray:
    """Orthonormal basis (columns) of the complement of span{g_lam} in ambient."""
    n = ps.space.dim
    d = ambient.dim - n
    if d < 1:
        raise NoOrthogonalVector("ambient space does not extend the node system")
    fam = biorthogonal(ps)
    B = np.stack([f.pad_to(ambient.dim).coeffs for f in fam])
    sqm = np.sqrt(ambient.moments)
    _, sv, vh = np.linalg.svd(np.conj(B * sqm[None, :]), full_matrices=True)
    rank = int(np.count_nonzero(sv > 1e-12 * sv.max()))
    if ambient.dim - rank < d:
        raise NoOrthogonalVector("numerical rank leaves no orthogonal direction")
    basis_std = np.conj(vh[rank:]).T  # orthonormal in the sqrt-moment coordinates
    return basis_std / sqm[:, None]


def _place_p_zeros(points: np.ndarray, count: int) -> np.ndarray:
    """count simple zeros on a circle outside the node set, golden-angle spaced."""
    radius = 1.5 * max(float(np.max(np.abs(points))), 1.0)
    shift = 0.0
    for _ in range(64):
        w = radius * np.exp(1j * (shift + _GOLDEN_ANGLE * np.arange(count)))
        dist_nodes = np.min(np.abs(w[:, None] - points[None, :]))
        pair = np.abs(w[:, None] - w[None, :])
        np.fill_diagonal(pair, np.inf)
        if dist_nodes > 1e-6 and pair.min() > 1e-6:
            return w
        shift += 0.0173
    raise RuntimeError("could not place annihilator zeros off the node set")


def _select_index(H: CoeffFunction, ambient: TruncatedFockSpace, rtol: float = 1e-8) -> int:
    nh = norm(H, ambient)
    pair = np.abs(H.coeffs) * np.sqrt(ambient.moments)  # |<H, z^n>| / ||z^n||
    usable = np.nonzero(pair > rtol * nh)[0]
    if usable.size == 0:
        raise NoUsableIndex("all monomial pairings fall below threshold")
    return int(usable[0])


def _finish_instance(ps, ambient, big, H, d, seed) -> YoungInstance:
    n = _select_index(H, ambient)
    zeros = _place_p_zeros(ps.points, n + 1)
    P = CoeffFunction.from_coeffs(npoly.polyfromroots(zeros), big.dim)
    return YoungInstance(
        system=ps, ambient=ambient, big=big, H=H, P=P,
        n_index=n, P_zeros=zeros, d=d, seed=seed,
    )


def make_instance(ps: PointSystem, d: int, seed: int, big_extra: int = 6) -> YoungInstance:
    """Draw a seeded unit H in the orthogonal complement and set up P."""
    if d < 1:
        raise ValueError("inflation d must be >= 1")
    w = ps.space.weight
    n = ps.space.dim
    ambient = compute_moments(w, n + d)
    big = compute_moments(w, n + d + big_extra)
    basis = orthogonal_complement_basis(ps, ambient)
    rng = np.random.default_rng(seed)
    combo = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    coeffs = basis @ combo
    # deterministic phase: largest coefficient real positive
    top = coeffs[np.argmax(np.abs(coeffs))]
    coeffs *= np.conj(top) / abs(top)
    H = CoeffFunction.from_coeffs(coeffs, ambient.dim)
    H = CoeffFunction.from_coeffs(H.coeffs / norm(H, ambient), ambient.dim)
    return _finish_instance(ps, ambient, big, H, d, seed)


def instance_from_H(
    ps: PointSystem,
    H: CoeffFunction,
    seed: int = 0,
    allow_zero: bool = False,
    big_extra: int = 6,
) -> YoungInstance:
    """Wrap a user-supplied H after validating its orthogonality."""
    w = ps.space.weight
    n = ps.space.dim
    d = H.space_dim - n
    if d < 1:
        raise ValueError("H must live in a space strictly larger than the node system")
    ambient = compute_moments(w, H.space_dim)
    big = compute_moments(w, H.space_dim + big_extra)
    nh = norm(H, ambient)
    if nh == 0.0:
        if not allow_zero:
            raise OrthogonalityViolation("H = 0 is only allowed with allow_zero=True")
        zeros = _place_p_zeros(ps.points, 1)
        P = CoeffFunction.from_coeffs(npoly.polyfromroots(zeros), big.dim)
        return YoungInstance(
            system=ps, ambient=ambient, big=big, H=H, P=P,
            n_index=0, P_zeros=zeros, d=d, seed=seed,
        )
    for g in biorthogonal(ps):
        gpad = g.pad_to(ambient.dim)
        ip = inner_product(H, gpad, ambient)
        if abs(ip) > 1e-8 * nh * norm(gpad, ambient):
            raise OrthogonalityViolation(
                f"H is not orthogonal to the dual family: |<H, g>| = {abs(ip):.3g}"
            )
    return _finish_instance(ps, ambient, big, H, d, seed)


# ----------------------------------------------------------------------
# the transform
# ----------------------------------------------------------------------

@dataclass
class QResult:
    z: np.ndarray
    q: np.ndarray
    a1: np.ndarray
    a2: np.ndarray
    c1: np.ndarray                  # A1 = G * c1
    c2: np.ndarray                  # A2 = -P * c2
    q_quad: np.ndarray
    q_coeffs: np.ndarray
    residuals_on_lambda: np.ndarray
    t_mask: np.ndarray
    t_estimate: np.ndarray
    norm_estimate: float
    quad_vs_moment_rel: float
    wj_identity_rel: float
    split_rel: float
    stencil_idx: dict
    near_idx: dict
    w_idx: np.ndarray
    fd_delta: float
    h_norm: float

    def q_at(self, z: complex) -> complex:
        return complex(npoly.polyval(z, self.q_coeffs))


def _q_poly_coeffs(inst: YoungInstance) -> np.ndarray:
    """Exact z-coefficients of Q via the divided-difference recursion.

    With Num(zeta, z) = G(z)P(zeta) - G(zeta)P(z) = (z - zeta) W(zeta, z)
    one has W_{j,k} = sum_i Num_{j-i, k+1+i}, and pairing the zeta-poly
    against H gives Q_k = sum_j W_{j,k} conj(H_j) m_j.
    """
    G = inst.system.gen_coeffs
    P = npoly.polyfromroots(inst.P_zeros)
    D = max(G.size, P.size) - 1
    g = np.zeros(D + 1, dtype=complex)
    p = np.zeros(D + 1, dtype=complex)
    g[: G.size] = G
    p[: P.size] = P
    num = p[:, None] * g[None, :] - g[:, None] * p[None, :]  # num[j, k]
    m = inst.ambient.moments
    Hc = np.conj(inst.H.coeffs)
    jdim = min(D, inst.ambient.dim)
    qc = np.zeros(D, dtype=complex)
    for k in range(D):
        for j in range(jdim):
            acc = 0.0 + 0.0j
            for i in range(j + 1):
                kk = k + 1 + i
                if kk <= D:
                    acc += num[j - i, kk]
            qc[k] += acc * Hc[j] * m[j]
    return qc


def _default_grid(inst: YoungInstance) -> np.ndarray:
    pts = inst.system.points
    r_out = float(np.max(np.abs(inst.P_zeros)))
    radii = np.linspace(0.15, 1.15, 7) * r_out
    angles = np.exp(1j * (2.0 * np.pi * np.arange(8) / 8 + 0.19))
    rings = (radii[:, None] * angles[None, :]).ravel()
    return rings[np.abs(rings) <= inst.big.cutoff_radius]


def _sep_scale(ps: PointSystem) -> float:
    s = ps.separation
    if not np.isfinite(s):
        s = max(1.0, float(np.max(np.abs(ps.points))) if ps.points.size else 1.0)
    return min(s, 1.0)


def q_transform(
    inst: YoungInstance,
    z_grid: np.ndarray | None = None,
    quad_order: int = 48,
    quad_panels: int = 24,
) -> QResult:
    """Evaluate Q, its A1/A2 split, and all built-in consistency checks."""
    ps = inst.system
    w = inst.weight
    base = _default_grid(inst) if z_grid is None else np.asarray(z_grid, dtype=complex)
    if np.any(np.abs(base) > inst.big.cutoff_radius):
        raise ValueError("grid extends beyond the truncation disc")

    sep = _sep_scale(ps)
    delta_fd = 1e-2 * sep
    delta_near = 1e-4 * sep
    stencil_dirs = np.array([1, 1j, -1, -1j])
    near_dirs = np.exp(1j * (2.0 * np.pi * np.arange(4) / 4 + 0.4))

    chunks = [base, inst.P_zeros.astype(complex)]
    w_idx = np.arange(base.size, base.size + inst.P_zeros.size)
    stencil_idx, near_idx = {}, {}
    pos = base.size + inst.P_zeros.size
    for i, lam in enumerate(ps.points):
        st = lam + delta_fd * stencil_dirs
        nr = lam + delta_near * near_dirs
        chunks.append(st)
        chunks.append(nr)
        stencil_idx[i] = np.arange(pos, pos + 4)
        near_idx[i] = np.arange(pos + 4, pos + 8)
        pos += 8
    z = np.concatenate(chunks)

    # moment path: exact polynomial coefficients
    qc = _q_poly_coeffs(inst)
    qv = npoly.polyval(z, qc)

    # A1/A2 via the annulus-split transform
    P = npoly.polyfromroots(inst.P_zeros)
    G = ps.gen_coeffs
    rcut = inst.big.cutoff_radius
    c1 = weighted_poly_cauchy(P, inst.H.coeffs, w, z, rcut)
    c2 = weighted_poly_cauchy(G, inst.H.coeffs, w, z, rcut)
    a1 = npoly.polyval(z, G) * c1
    a2 = -npoly.polyval(z, P) * c2

    # independent quadrature path for Q
    rule = radial_rule(rcut, quad_panels, quad_order)
    deg_max = max(G.size, P.size, inst.ambient.dim)
    m_ang = 2 * deg_max + 9
    theta = np.exp(2j * np.pi * np.arange(m_ang) / m_ang)
    zeta = (rule.nodes[:, None] * theta[None, :]).ravel()
    wq = (
        (rule.weights * rule.nodes * np.exp(-np.asarray(w.h(rule.nodes), float)))[:, None]
        * (2.0 * np.pi / m_ang)
    )
    wq = np.broadcast_to(wq, (rule.nodes.size, m_ang)).ravel()
    hbar = np.conj(npoly.polyval(zeta, inst.H.coeffs))
    gz_all = npoly.polyval(z, G)
    pz_all = npoly.polyval(z, P)
    gzeta = npoly.polyval(zeta, G)
    pzeta = npoly.polyval(zeta, P)
    q_quad = np.empty_like(qv)
    D = max(G.size, P.size) - 1
    gpad = np.zeros(D + 1, dtype=complex)
    ppad = np.zeros(D + 1, dtype=complex)
    gpad[: G.size] = G
    ppad[: P.size] = P
    for i, zz in enumerate(z):
        numc = gz_all[i] * ppad - pz_all[i] * gpad
        rc, _ = divide_out_root(numc, zz)
        q_quad[i] = np.sum(wq * (-npoly.polyval(zeta, rc)) * hbar)

    scale_q = float(np.max(np.abs(qv))) if qv.size else 0.0
    quad_rel = float(np.max(np.abs(q_quad - qv))) / max(scale_q, 1e-300)

    residuals = np.abs(npoly.polyval(ps.points, qc))

    # split consistency Q = A1 + A2, pointwise against local + global scale
    denom = np.abs(a1) + np.abs(a2) + scale_q
    split_rel = float(np.max(np.abs(qv - (a1 + a2)) / np.maximum(denom, 1e-300)))

    # Q(w_j) = G(w_j) * C1(w_j): the second term of the split dies at P zeros
    if w_idx.size:
        wj_rel = float(
            np.max(np.abs(qv[w_idx] - gz_all[w_idx] * c1[w_idx])) / max(scale_q, 1e-300)
        )
    else:
        wj_rel = 0.0

    # T samples away from the nodes
    dist = np.min(np.abs(z[:, None] - ps.points[None, :]), axis=1)
    t_mask = dist > 0.1 * sep
    with np.errstate(invalid="ignore", divide="ignore"):
        t_est = np.where(t_mask, qv / np.where(t_mask, gz_all, 1.0), np.nan + 0j)

    # truncated-disc norm of Q
    qzeta = npoly.polyval(zeta, qc)
    norm_est = float(np.sqrt(np.real(np.sum(wq * qzeta * np.conj(qzeta)))))

    return QResult(
        z=z, q=qv, a1=a1, a2=a2, c1=c1, c2=c2, q_quad=q_quad, q_coeffs=qc,
        residuals_on_lambda=residuals, t_mask=t_mask, t_estimate=t_est,
        norm_estimate=norm_est, quad_vs_moment_rel=quad_rel,
        wj_identity_rel=wj_rel, split_rel=split_rel,
        stencil_idx=stencil_idx, near_idx=near_idx, w_idx=w_idx, fd_delta=delta_fd,
        h_norm=norm(inst.H, inst.ambient),
    )


# ----------------------------------------------------------------------
# factorization Q = G T
# ----------------------------------------------------------------------

@dataclass
class TFactorReport:
    t_max: float
    threshold: float
    nonzero: bool
    limits_at_nodes: np.ndarray
    continuity_rel: float
    residual_scale: float


def factor_T(
    result: QResult,
    ps: PointSystem,
    residual_rtol: float = 1e-8,
    nonzero_rtol: float = 1e-6,
) -> TFactorReport:
    """Estimate T = Q/G off the nodes and by the limit Q'(lam)/G'(lam) at them.

    The residual gate demands Q to vanish on the node set to tolerance,
    otherwise the factorization is ill-defined.  The nonzero verdict
    compares max |T| against ``nonzero_rtol`` times sup|G| ||H||, two
    orders above the quadrature noise floor of the Q evaluations.
    """
    scale_q = float(np.max(np.abs(result.q))) if result.q.size else 0.0
    if scale_q > 0 and float(np.max(result.residuals_on_lambda)) > residual_rtol * scale_q:
        raise ResidualTooLarge(
            f"max |Q(lam)| = {np.max(result.residuals_on_lambda):.3g} "
            f"exceeds {residual_rtol:g} * {scale_q:.3g}"
        )
    # limit values via 4-point circular stencils in the Q samples
    limits = np.empty(ps.points.size, dtype=complex)
    cont = 0.0
    t_on = result.t_estimate[result.t_mask]
    t_scale = float(np.nanmax(np.abs(t_on))) if t_on.size else 0.0
    for i, lam in enumerate(ps.points):
        idx = result.stencil_idx[i]
        qs = result.q[idx]
        dirs = np.array([1, 1j, -1, -1j])
        qprime = np.sum(qs / dirs) / (4.0 * result.fd_delta)
        limits[i] = qprime / ps.gen_derivs[i]
        near = result.near_idx[i]
        # T extends analytically across the node: the limit must match
        # the nearby samples (computed as raw Q/G) to first order
        tnear = result.q[near] / npoly.polyval(result.z[near], ps.gen_coeffs)
        if t_scale > 0:
            cont = max(cont, float(np.max(np.abs(tnear - limits[i])) / t_scale))
    t_max = max(t_scale, float(np.max(np.abs(limits))) if limits.size else 0.0)
    g_sup = float(np.max(np.abs(npoly.polyval(result.z, ps.gen_coeffs))))
    threshold = nonzero_rtol * g_sup * result.h_norm
    return TFactorReport(
        t_max=t_max,
        threshold=threshold,
        nonzero=bool(t_max > threshold),
        limits_at_nodes=limits,
        continuity_rel=cont,
        residual_scale=scale_q,
    )


# ----------------------------------------------------------------------
# the contradiction argument
# ----------------------------------------------------------------------

@dataclass
class ContradictionReport:
    c_values: np.ndarray            # <H, P/(w_j - .)>
    a_weights: np.ndarray           # w_j^n / P'(w_j)
    direct_pairing: complex         # <H, z^n>
    reconstructed: complex          # from the partial-fraction identity
    rel_error: float
    c_max: float
    c_lower_bound: float            # |<H,z^n>| / sum |a_j|
    implication_fails: bool         # "T small => all c_j small" is untenable

    def __str__(self) -> str:
        return (
            f"|<H,z^n>| = {abs(self.direct_pairing):.6g}, reconstruction error "
            f"{self.rel_error:.2e}, max |c_j| = {self.c_max:.6g} "
            f">= {self.c_lower_bound:.6g}"
        )


def contradiction_check(inst: YoungInstance) -> ContradictionReport:
    """Verify z^n = sum_j a_j P/(. - w_j) against the moment pairing.

    Each P/(w_j - .) is an exact polynomial (synthetic division at a
    zero of P).  The partial-fraction reconstruction of <H, z^n> from
    the pairings c_j certifies that they cannot all vanish while
    <H, z^n> does not, which is the engine of the nonvanishing verdict.
    """
    P = npoly.polyfromroots(inst.P_zeros)
    pprime = npoly.polyder(P)
    m = inst.ambient.moments
    Hc = inst.H.coeffs
    n = inst.n_index
    cs, aws = [], []
    for wj in inst.P_zeros:
        quot, _ = divide_out_root(P, wj)  # P/(z - w_j)
        pj = -np.asarray(quot, dtype=complex)  # P/(w_j - z)
        idx = min(pj.size, Hc.size)
        cs.append(complex(np.sum(Hc[:idx] * np.conj(pj[:idx]) * m[:idx])))
        aws.append(wj ** n / npoly.polyval(wj, pprime))
    cs = np.asarray(cs)
    aws = np.asarray(aws)
    direct = complex(Hc[n] * m[n]) if n < Hc.size else 0.0
    recon = complex(-np.sum(np.conj(aws) * cs))
    scale = max(abs(direct), abs(recon), 1e-300)
    lower = abs(direct) / float(np.sum(np.abs(aws)))
    return ContradictionReport(
        c_values=cs,
        a_weights=aws,
        direct_pairing=direct,
        reconstructed=recon,
        rel_error=abs(recon - direct) / scale,
        c_max=float(np.max(np.abs(cs))),
        c_lower_bound=lower,
        implication_fails=bool(np.max(np.abs(cs)) >= lower > 0),
    )


# ----------------------------------------------------------------------
# A1 / A2 split bounds
# ----------------------------------------------------------------------

@dataclass
class SplitBoundReport:
    a1_constant: float              # sup |C1(z)| (1 + |z|)
    a1_tail_growth: float
    identity_rel: float             # A2 decomposition identity deviation
    identity_points: np.ndarray
    a2_weighted_norm: float
    notes: list[str]


def a1_a2_bounds(
    inst: YoungInstance,
    result: QResult,
    lam_index: int = 0,
    n_identity_points: int = 20,
    identity_seed: int = 1,
) -> SplitBoundReport:
    """Empirical A1 bound constant, the A2 decomposition identity, and
    the truncated-disc weighted norm of A2.

    The identity: with psi = G conj(H) e^{-h} / (. - lam),

        C2(z) = (z - lam) C[psi](z) - int psi dm_2,

    checked against the fully numerical transform at seeded points.
    """
    ps = inst.system
    w = inst.weight
    ratios = np.abs(result.c1) * (1.0 + np.abs(result.z))
    order = np.argsort(np.abs(result.z))
    rr = ratios[order]
    qn = max(1, (3 * rr.size) // 4)
    tail_growth = float(np.max(rr[qn:])) / max(float(np.max(rr[:qn])), 1e-300) - 1.0

    lam = complex(ps.points[lam_index])
    gdiv, _ = divide_out_root(ps.gen_coeffs, lam)
    psi = poly_weighted_density(gdiv, inst.H.coeffs, w, label="G conj(H) e^-h / (.-lam)")
    idx = min(len(gdiv), inst.H.coeffs.size)
    psi_mass = complex(
        np.sum(np.asarray(gdiv[:idx]) * np.conj(inst.H.coeffs[:idx]) * inst.ambient.moments[:idx])
    )

    rng = np.random.default_rng(identity_seed)
    pts = []
    while len(pts) < n_identity_points:
        zz = rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1)
        zz *= 0.85 * inst.big.cutoff_radius / math.sqrt(2.0)
        if np.min(np.abs(zz - ps.points)) > 0.05:
            pts.append(zz)
    pts = np.asarray(pts)
    lhs = weighted_poly_cauchy(ps.gen_coeffs, inst.H.coeffs, w, pts, inst.big.cutoff_radius)
    rhs = np.array(
        [
            (zz - lam) * planar_cauchy(psi, complex(zz), hole_radius=1e-3)
            - psi_mass
            for zz in pts
        ]
    )
    scale = max(float(np.max(np.abs(lhs))), float(np.max(np.abs(rhs))), 1e-300)
    identity_rel = float(np.max(np.abs(lhs - rhs))) / scale

    # coarse polar estimate of int |A2|^2 e^{-h} over the truncation disc
    rule = radial_rule(inst.big.cutoff_radius, 16, 16)
    m_ang = 2 * inst.ambient.dim + 9
    theta = np.exp(2j * np.pi * np.arange(m_ang) / m_ang)
    zeta = (rule.nodes[:, None] * theta[None, :]).ravel()
    wq = (
        (rule.weights * rule.nodes * np.exp(-np.asarray(w.h(rule.nodes), float)))[:, None]
        * (2.0 * np.pi / m_ang)
    )
    wq = np.broadcast_to(wq, (rule.nodes.size, m_ang)).ravel()
    P = npoly.polyfromroots(inst.P_zeros)
    a2_nodes = -npoly.polyval(zeta, P) * weighted_poly_cauchy(
        ps.gen_coeffs, inst.H.coeffs, w, zeta, inst.big.cutoff_radius
    )
    a2_norm = float(np.sqrt(np.real(np.sum(wq * a2_nodes * np.conj(a2_nodes)))))

    return SplitBoundReport(
        a1_constant=float(np.max(ratios)),
        a1_tail_growth=tail_growth,
        identity_rel=identity_rel,
        identity_points=pts,
        a2_weighted_norm=a2_norm,
        notes=[f"psi mass (should be ~0 by orthogonality): {abs(psi_mass):.3e}"],
    )


# ----------------------------------------------------------------------
# densities for the decay/growth verifiers
# ----------------------------------------------------------------------

def lemma3_density(inst: YoungInstance) -> DensityFunction:
    """phi = P conj(H) e^{-h}, the density behind the A1 estimate."""
    P = npoly.polyfromroots(inst.P_zeros)
    return poly_weighted_density(P, inst.H.coeffs, inst.weight, label="P conj(H) e^-h")


def lemma4_density(inst: YoungInstance, lam_index: int = 0) -> DensityFunction:
    """psi = G conj(H) e^{-h} / (. - lam), the density behind the A2 estimate."""
    lam = complex(inst.system.points[lam_index])
    gdiv, _ = divide_out_root(inst.system.gen_coeffs, lam)
    return poly_weighted_density(
        gdiv, inst.H.coeffs, inst.weight, label="G conj(H) e^-h / (.-lam)"
    )
