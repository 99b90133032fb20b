"""Batch front-end: run verification suites, emit JSON reports and CSVs.

Exit codes: 0 all non-info checks pass, 1 some check failed, 2 config
parse error, 3 I/O failure while writing outputs.
"""

from __future__ import annotations

import argparse
import math
import sys
import warnings

import numpy as np
from numpy.polynomial import polynomial as npoly

from . import cauchy as ca
from . import fockcore as fc
from . import paleywiener as pw
from . import systems as sy
from . import weights as wt
from . import young as yg
from .config import ExperimentConfig, parse_config
from .errors import ConfigError, FockLabError
from .report import (
    CheckRecord,
    ExperimentReport,
    Sweep,
    check_flag,
    check_info,
    check_lower,
    check_upper,
    write_report,
    write_sweeps,
)

__all__ = ["main", "run_suites", "build_report"]


def _tol(cfg: ExperimentConfig, name: str, default: float) -> float:
    return float(cfg.tolerances.get(name, default))


# ----------------------------------------------------------------------
# weights suite
# ----------------------------------------------------------------------

def _suite_weights(cfg: ExperimentConfig):
    ts = cfg.tol_scale
    checks, sweeps = [], []
    for name, w in wt.builtin_weights().items():
        rep = wt.regularity_check(w, t_max=1e4)
        checks.append(check_flag(f"weights.regularity.{name}", rep.verdict))
        sweeps.append(
            Sweep(
                name=f"regularity_{name.replace('^', '')}",
                description=f"regularity sweep for {w.name}: ratio = log(t+|h'|+|h''|)/h(t)",
                columns=["t", "ratio"],
                rows=[[float(t), float(r)] for t, r in zip(rep.grid, rep.ratios)],
            )
        )
    const_rep = wt.regularity_check(wt.constant(5.0), t_max=1e4)
    checks.append(
        check_flag("weights.constant_weight_rejected", not const_rep.verdict,
                   note="log t is never o(1) against a constant weight")
    )

    anchor = math.log(10 + 20 * math.pi + 2 * math.pi) / (100 * math.pi)
    wcl = wt.classical()
    measured = math.log(10 + abs(float(wcl.h_prime(10.0))) + abs(float(wcl.h_second(10.0)))) / float(wcl.h(10.0))
    checks.append(
        check_upper("weights.classical_ratio_anchor_t10", abs(measured - anchor) / anchor,
                    _tol(cfg, "ratio_anchor_rel", 1e-12), ts,
                    note=f"ratio(10) = {anchor:.6f} by direct arithmetic")
    )

    w = wt.weight_from_spec(cfg.weight)
    ok, worst = wt.derivative_consistency(w)
    checks.append(check_upper("weights.derivative_consistency", worst,
                              _tol(cfg, "derivative_rel", 1e-6), ts))
    samples = [1.0 + 0j, 5.0j, -10.0 + 0j, 15.0 + 5.0j]
    osc = wt.oscillation_check(w, samples, eps=0.1)
    checks.append(check_flag("weights.oscillation_unflagged",
                             not any(s.flagged for s in osc)))
    sweeps.append(
        Sweep(
            name="oscillation_samples",
            description=f"oscillation of {w.name} over discs of radius e^(-0.1 h(z))",
            columns=["z_re", "z_im", "radius", "sup_diff"],
            rows=[[s.z.real, s.z.imag, s.radius, s.sup_diff] for s in osc],
        )
    )
    return checks, sweeps


# ----------------------------------------------------------------------
# kernel suite
# ----------------------------------------------------------------------

def _suite_kernel(cfg: ExperimentConfig):
    ts = cfg.tol_scale
    checks, sweeps = [], []
    rng = np.random.default_rng(cfg.seed + 11)

    w_cl = wt.classical()
    sp31 = fc.compute_moments(w_cl, 31)
    exact = np.array([math.factorial(n) / math.pi ** n for n in range(31)])
    checks.append(
        check_upper("kernel.classical_moments_rel", float(np.max(np.abs(sp31.moments - exact) / exact)),
                    _tol(cfg, "moment_rel", 1e-10), ts)
    )
    w_lin = wt.power(1.0, 2.0)
    sp16 = fc.compute_moments(w_lin, 16)
    exact2 = np.array([math.pi * math.factorial(2 * n + 1) / 2 ** (2 * n + 1) for n in range(16)])
    checks.append(
        check_upper("kernel.linear_moments_rel", float(np.max(np.abs(sp16.moments - exact2) / exact2)),
                    _tol(cfg, "moment_rel", 1e-10), ts)
    )

    sp60 = fc.compute_moments(w_cl, 60)
    hp = fc.hp_moments(w_cl, 60)
    checks.append(
        check_upper("kernel.double_vs_hp_moments", fc.hp_cross_certify(sp60, hp),
                    _tol(cfg, "moment_rel", 1e-10), ts)
    )
    worst = 0.0
    for _ in range(100):
        z = rng.uniform(0, 2) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        lam = rng.uniform(0, 2) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        val = fc.hp_kernel_value(hp, lam, z)
        ref = np.exp(math.pi * z * np.conj(lam))
        worst = max(worst, abs(val - ref) / abs(ref))
    checks.append(check_upper("kernel.vs_exponential_rel", worst,
                              _tol(cfg, "kernel_rel", 1e-8), ts))

    # reproducing property in the config space
    w = wt.weight_from_spec(cfg.weight)
    sp = fc.compute_moments(w, cfg.dim)
    worst = 0.0
    for _ in range(100):
        c = rng.standard_normal(cfg.dim) + 1j * rng.standard_normal(cfg.dim)
        f = fc.CoeffFunction.from_coeffs(c, cfg.dim)
        lam = rng.uniform(0, min(2.0, 0.5 * sp.cutoff_radius)) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        k = fc.kernel(sp, lam)
        err = abs(fc.inner_product(f, k, sp) - fc.evaluate(f, lam))
        worst = max(worst, err / (fc.norm(f, sp) * fc.norm(k, sp)))
    checks.append(check_upper("kernel.reproducing_rel", worst,
                              _tol(cfg, "reproducing_rel", 1e-10), ts))

    # kernel symmetry <k_lam, k_mu> = k_lam(mu) = conj(k_mu(lam))
    worst = 0.0
    for _ in range(20):
        lam, mu = (rng.uniform(0, 1.5) * np.exp(1j * rng.uniform(0, 2 * np.pi)) for _ in range(2))
        kl, km = fc.kernel(sp, lam), fc.kernel(sp, mu)
        ip = fc.inner_product(kl, km, sp)
        scale = max(abs(ip), 1e-30)
        worst = max(worst, abs(ip - fc.evaluate(kl, mu)) / scale,
                    abs(ip - np.conj(fc.evaluate(km, lam))) / scale)
    checks.append(check_upper("kernel.symmetry_rel", worst,
                              _tol(cfg, "symmetry_rel", 1e-12), ts))

    # coefficient-formula norm vs direct quadrature
    c = rng.standard_normal(cfg.dim) + 1j * rng.standard_normal(cfg.dim)
    f = fc.CoeffFunction.from_coeffs(c, cfg.dim)
    n2_coeff = float(np.sum(np.abs(c) ** 2 * sp.moments))
    n2_quad = fc.quadrature_norm_sq(f, sp)
    checks.append(check_upper("kernel.norm_quadrature_rel", abs(n2_quad - n2_coeff) / n2_coeff,
                              _tol(cfg, "norm_rel", 1e-8), ts))

    # truncation convergence with the analytic remainder bound
    # (N, |z lam|) pairs keep the remainder bound above the working
    # precision of the extended backend (~1e-36 relative)
    ok_bound = True
    rows = []
    for N, zls in ((20, (0.5, 1.0, 2.0)), (40, (1.0, 2.0)), (60, (2.0, 2.4))):
        hpN = hp[:N]
        for zl in zls:
            err = fc.hp_truncation_error(hpN, 1.0, zl)
            x = math.pi * zl
            bound = x ** N / math.factorial(N) * math.exp(x)
            rows.append([N, zl, err, bound])
            ok_bound = ok_bound and err <= bound
    checks.append(check_flag("kernel.truncation_error_within_bound", ok_bound))
    sweeps.append(
        Sweep(
            name="kernel_truncation",
            description="truncated kernel vs exponential: error and remainder bound",
            columns=["N", "z_lam", "error", "bound"],
            rows=rows,
        )
    )

    # growth bound report for the normalized top monomial
    f = fc.normalized_monomial(cfg.dim - 1, sp)
    grid = np.linspace(0.0, 0.95 * sp.cutoff_radius, 120).astype(complex)
    rep = fc.growth_bound_check(sp, f, eps=0.05, grid=grid)
    checks.append(check_flag("kernel.growth_bound_interior_max", rep.passed,
                             note=str(rep)))
    checks.append(check_info("kernel.growth_bound_constant", rep.max_ratio))
    return checks, sweeps


# ----------------------------------------------------------------------
# systems suite
# ----------------------------------------------------------------------

def _suite_systems(cfg: ExperimentConfig):
    ts = cfg.tol_scale
    checks, sweeps = [], []
    w = wt.weight_from_spec(cfg.weight)

    for N in (4, 8, 16):
        sp = fc.compute_moments(w, N)
        for kind, pts in (
            ("roots", sy.roots_of_unity(N)),
            ("lattice", sy.disc_lattice(N, 1.0)),
        ):
            ps = sy.build_system(pts, sp)
            fam = sy.biorthogonal(ps)
            B = np.array(
                [[fc.inner_product(fc.kernel(sp, lam), g, sp) for g in fam] for lam in ps.points]
            )
            bior_err = float(np.max(np.abs(B - np.eye(N))))
            checks.append(
                check_upper(f"systems.biorthogonality.{kind}{N}", bior_err,
                            _tol(cfg, "bior_abs", 1e-8), ts,
                            note=f"cond={ps.cond_estimate:.3g}")
            )
            rng = np.random.default_rng(cfg.seed + 31 + N)
            f = fc.CoeffFunction.from_coeffs(
                rng.standard_normal(N) + 1j * rng.standard_normal(N), N
            )
            rec = sy.lagrange_reconstruct(f, ps)
            err = float(np.max(np.abs(rec.coeffs - f.coeffs))) / max(1.0, float(np.max(np.abs(f.coeffs))))
            checks.append(
                check_upper(f"systems.reconstruction.{kind}{N}", err,
                            _tol(cfg, "reconstruct_rel", 1e-10) * max(ps.cond_estimate, 1.0), ts)
            )

    sp4 = fc.compute_moments(w, 4)
    ps4 = sy.build_system(sy.roots_of_unity(4, 1.2), sp4)
    one = fc.CoeffFunction.from_coeffs([1, 0, 0, 0], 4)
    part = sy.lagrange_reconstruct(one, ps4)
    checks.append(
        check_upper("systems.partition_of_unity", float(np.max(np.abs(part.coeffs - one.coeffs))),
                    _tol(cfg, "partition_abs", 1e-10) * max(ps4.cond_estimate, 1.0), ts)
    )

    e = [fc.normalized_monomial(n, sp4) for n in range(4)]
    smin, null = sy.completeness_defect(e, sp4)
    checks.append(check_flag("systems.defect_orthonormal", null == 0 and abs(smin - 1.0) < 1e-10))
    smin, null = sy.completeness_defect([e[0], e[0]], sp4)
    checks.append(check_flag("systems.defect_repeated_vector", null == 1 and smin < 1e-12))
    sp5 = fc.compute_moments(w, 5)
    fam5 = sy.biorthogonal(sy.build_system(sy.roots_of_unity(5), sp5))
    smin, null = sy.completeness_defect(list(fam5), sp5)
    checks.append(check_flag("systems.defect_dual_family_basis", null == 0,
                             note=f"sigma_min={smin:.3e}"))

    # rotation invariance of the kernel-Gram spectrum
    pts = sy.points_from_spec(cfg.points, cfg.dim, cfg.seed)
    sp = fc.compute_moments(w, cfg.dim)
    ps = sy.build_system(pts, sp)
    theta = 0.7
    track = sy.perturb_and_track(ps, [np.zeros(cfg.dim), (np.exp(1j * theta) - 1.0) * ps.points])
    checks.append(
        check_upper("systems.rotation_sigma_invariance",
                    abs(track[0].sigma_min - track[1].sigma_min), _tol(cfg, "rotation_abs", 1e-10), ts)
    )
    rows = [[i, t.sigma_min, t.cond_estimate] for i, t in enumerate(track)]

    # coalescence: sigma_min collapses monotonically at the end
    base = sy.build_system(np.array([0.0, 1.0, 2.0], dtype=complex), fc.compute_moments(w, 3))
    sched = [np.array([0, 0, -s * 0.999]) for s in np.linspace(0.0, 1.0, 6)]
    tr = sy.perturb_and_track(base, sched)
    sig = [t.sigma_min for t in tr]
    checks.append(check_flag("systems.coalescence_sigma_collapse",
                             sig[-1] < sig[-2] < sig[-3] and sig[-1] < 1e-2 * sig[0]))
    sweeps.append(
        Sweep(
            name="sigma_min_trajectories",
            description="normalized kernel Gram sigma_min under perturbations",
            columns=["step", "sigma_min", "cond"],
            rows=rows + [[10 + i, t.sigma_min, t.cond_estimate] for i, t in enumerate(tr)],
        )
    )
    return checks, sweeps


# ----------------------------------------------------------------------
# cauchy suite
# ----------------------------------------------------------------------

def _suite_cauchy(cfg: ExperimentConfig):
    ts = cfg.tol_scale
    checks, sweeps = [], []
    rng = np.random.default_rng(cfg.seed + 41)

    # unit-disc indicator against the closed form
    d = ca.disc_indicator()
    worst = 0.0
    rows = []
    for i in range(40):
        r = rng.uniform(1.3, 3.0) if i % 2 == 0 else rng.uniform(0.05, 0.8)
        z = r * np.exp(1j * rng.uniform(0, 2 * np.pi))
        ref = math.pi / z if r > 1 else math.pi * np.conj(z)
        val = ca.planar_cauchy(d, z, hole_radius=1e-4)
        worst = max(worst, abs(val - ref))
        rows.append([z.real, z.imag, val.real, val.imag, abs(val - ref)])
    checks.append(check_upper("cauchy.disc_indicator_abs", worst,
                              _tol(cfg, "indicator_abs", 1e-6), ts))
    sweeps.append(
        Sweep(
            name="cauchy_indicator",
            description="planar Cauchy transform of the unit-disc indicator",
            columns=["z_re", "z_im", "transform_re", "transform_im", "abs_error"],
            rows=rows,
        )
    )

    worst = 0.0
    for _ in range(20):
        z = rng.uniform(-3, 3) + 1j * rng.uniform(-3, 3)
        r = rng.uniform(0.01, 5.0)
        worst = max(worst, abs(ca.disc_mean_value_check(z, r)) / r)
    checks.append(check_upper("cauchy.disc_mean_value_rel", worst,
                              _tol(cfg, "mean_value_rel", 1e-12), ts))

    # linearity on smooth densities
    w = wt.classical()
    d1 = ca.poly_weighted_density([1.0], [1.0], w)
    d2 = ca.poly_weighted_density([0.0, 1.0], [1.0, 0.5], w)
    a, b = 1.3 - 0.2j, -0.4 + 0.9j

    def combo_eval(z):
        return a * d1.eval(z) + b * d2.eval(z)

    d12 = ca.DensityFunction(
        eval=combo_eval,
        support_radius=max(d1.support_radius, d2.support_radius),
        smoothness_scale=abs(a) * d1.smoothness_scale + abs(b) * d2.smoothness_scale,
        label="a*d1+b*d2",
    )
    worst = 0.0
    for z in (1.5 + 0.2j, 0.3 - 0.8j, 2.5j):
        lhs = ca.planar_cauchy(d12, z, 1e-3)
        rhs = a * ca.planar_cauchy(d1, z, 1e-3) + b * ca.planar_cauchy(d2, z, 1e-3)
        worst = max(worst, abs(lhs - rhs) / max(abs(lhs), 1e-30))
    checks.append(check_upper("cauchy.linearity_rel", worst,
                              _tol(cfg, "linearity_rel", 1e-10), ts))

    v1 = ca.planar_cauchy(d2, 0.9 + 0.4j, 1e-3)
    v2 = ca.planar_cauchy(d2, 0.9 + 0.4j, 5e-4)
    checks.append(check_upper("cauchy.hole_independence_rel", abs(v1 - v2) / abs(v1),
                              _tol(cfg, "hole_rel", 1e-8), ts))

    # analyticity off the support: 16-point circle average equals center
    bump = ca.radial_bump(1.0, p=2)
    z0 = 3.0 + 0.5j
    center = ca.planar_cauchy(bump, z0, 1e-3)
    ring = [ca.planar_cauchy(bump, z0 + 0.1 * np.exp(2j * np.pi * k / 16), 1e-3) for k in range(16)]
    checks.append(
        check_upper("cauchy.analytic_circle_average_rel",
                    abs(np.mean(ring) - center) / abs(center),
                    _tol(cfg, "circle_avg_rel", 1e-10), ts)
    )

    # decay verifier on the smooth cubic-decay density
    dq = ca.inverse_quartic()
    grid = np.concatenate(
        [np.geomspace(0.5, 50.0, 14) * np.exp(1j * t) for t in (0.0, 2.1, 4.2)]
    )
    rep3 = ca.verify_lemma3(dq, grid, declared_constant=6.5)
    checks.append(check_flag("cauchy.decay_bound_stable", rep3.passed,
                             note=f"C={rep3.empirical_constant:.4g}"))
    checks.append(check_info("cauchy.decay_bound_constant", rep3.empirical_constant))
    sweeps.append(
        Sweep(
            name="cauchy_decay_sweep",
            description="|C[phi](z)|(1+|z|) for phi = (1+|z|^2)^-2",
            columns=["z_re", "z_im", "transform_re", "transform_im", "bound_ratio"],
            rows=[[zz.real, zz.imag, tv.real, tv.imag, rr]
                  for zz, tv, rr in zip(rep3.z_grid, rep3.transform, rep3.ratios)],
        )
    )

    # verifiers on the annihilator-instance densities (classical, N=6)
    sp6 = fc.compute_moments(w, 6)
    ps6 = sy.build_system(sy.disc_lattice(6, 1.0), sp6)
    inst = yg.make_instance(ps6, d=cfg.inflation, seed=cfg.seed + 6)
    phi = yg.lemma3_density(inst)
    grid3 = np.concatenate(
        [np.geomspace(0.4, 20.0, 12) * np.exp(1j * t) for t in (0.35, 2.45, 4.55)]
    )
    repi = ca.verify_lemma3(phi, grid3)
    checks.append(check_flag("cauchy.instance_decay_stable", repi.passed,
                             note=f"C={repi.empirical_constant:.4g}"))
    psi = yg.lemma4_density(inst)
    grid4 = np.concatenate(
        [np.geomspace(0.3, 0.95 * inst.big.cutoff_radius, 10) * np.exp(1j * t) for t in (0.9, 3.0)]
    )
    rep4 = ca.verify_lemma4(psi, alpha=0.1, w=w, z_grid=grid4)
    checks.append(check_flag("cauchy.instance_growth_stable", rep4.passed,
                             note=f"C={rep4.empirical_constant:.4g}"))
    rep4b = ca.verify_lemma4(bump, alpha=0.5, w=w, z_grid=grid4)
    checks.append(check_info("cauchy.bump_growth_constant", rep4b.empirical_constant))
    return checks, sweeps


# ----------------------------------------------------------------------
# young suite
# ----------------------------------------------------------------------

def _suite_young(cfg: ExperimentConfig):
    ts = cfg.tol_scale
    checks, sweeps = [], []
    w = wt.weight_from_spec(cfg.weight)
    sp = fc.compute_moments(w, cfg.dim)
    pts = sy.points_from_spec(cfg.points, cfg.dim, cfg.seed)
    ps = sy.build_system(pts, sp)
    fam = sy.biorthogonal(ps)  # surfaces NearDoubleZero for coalescing configs
    del fam

    inst = yg.make_instance(ps, d=cfg.inflation, seed=cfg.seed)
    res = yg.q_transform(inst)
    scale_q = max(float(np.max(np.abs(res.q))), 1e-300)
    checks.append(check_upper("young.residual_on_nodes_rel",
                              float(res.residuals_on_lambda.max()) / scale_q,
                              _tol(cfg, "residual_rel", 1e-8), ts))
    checks.append(check_upper("young.split_identity_rel", res.split_rel,
                              _tol(cfg, "split_rel", 1e-10), ts))
    checks.append(check_upper("young.quadrature_vs_moment_rel", res.quad_vs_moment_rel,
                              _tol(cfg, "dual_path_rel", 1e-9), ts))
    checks.append(check_upper("young.annihilator_point_identity_rel", res.wj_identity_rel,
                              _tol(cfg, "wj_rel", 1e-8), ts))
    checks.append(check_info("young.q_weighted_norm", res.norm_estimate))

    tf = yg.factor_T(res, ps)
    checks.append(check_flag("young.factor_T_nonzero", tf.nonzero,
                             note=f"max|T|={tf.t_max:.4g} vs threshold {tf.threshold:.4g}"))
    checks.append(check_upper("young.factor_T_continuity_rel", tf.continuity_rel,
                              _tol(cfg, "t_continuity_rel", 1e-4), ts))

    cr = yg.contradiction_check(inst)
    checks.append(check_upper("young.partial_fraction_rel", cr.rel_error,
                              _tol(cfg, "partial_fraction_rel", 1e-8), ts))
    checks.append(check_flag("young.contradiction_engine", cr.implication_fails,
                             note=str(cr)))

    bounds = yg.a1_a2_bounds(inst, res)
    checks.append(check_upper("young.a2_decomposition_identity_rel", bounds.identity_rel,
                              _tol(cfg, "a2_identity_rel", 1e-8), ts))
    checks.append(check_info("young.a1_bound_constant", bounds.a1_constant,
                             note=f"tail growth {bounds.a1_tail_growth:.3g}"))
    checks.append(check_info("young.a2_weighted_norm", bounds.a2_weighted_norm))

    # linearity and phase equivariance in H
    rng = np.random.default_rng(cfg.seed + 71)
    basis = yg.orthogonal_complement_basis(ps, inst.ambient)
    if basis.shape[1] >= 2:
        h1 = fc.CoeffFunction.from_coeffs(basis[:, 0], inst.ambient.dim)
        h2 = fc.CoeffFunction.from_coeffs(basis[:, 1], inst.ambient.dim)
    else:
        h1 = inst.H
        h2 = fc.CoeffFunction.from_coeffs(basis[:, 0] * (0.3 + 0.4j), inst.ambient.dim)
    grid = res.z[: min(24, res.z.size)]
    i1 = yg.instance_from_H(ps, h1, seed=cfg.seed)
    i2 = yg.instance_from_H(ps, h2, seed=cfg.seed)
    hsum = fc.CoeffFunction.from_coeffs(h1.coeffs + h2.coeffs, inst.ambient.dim)
    i12 = yg.instance_from_H(ps, hsum, seed=cfg.seed)
    i12 = yg.YoungInstance(
        system=i12.system, ambient=i12.ambient, big=i12.big, H=i12.H,
        P=i1.P, n_index=i1.n_index, P_zeros=i1.P_zeros, d=i12.d, seed=i12.seed,
    )
    i2p = yg.YoungInstance(
        system=i2.system, ambient=i2.ambient, big=i2.big, H=i2.H,
        P=i1.P, n_index=i1.n_index, P_zeros=i1.P_zeros, d=i2.d, seed=i2.seed,
    )
    q1 = yg.q_transform(i1, z_grid=grid)
    q2 = yg.q_transform(i2p, z_grid=grid)
    q12 = yg.q_transform(i12, z_grid=grid)
    lin_scale = max(float(np.max(np.abs(q12.q))), 1e-300)
    lin = float(np.max(np.abs(q12.q - (q1.q + q2.q)))) / lin_scale
    checks.append(check_upper("young.linearity_in_H_rel", lin,
                              _tol(cfg, "linearity_rel", 1e-10), ts))
    theta = float(rng.uniform(0.3, 2.8))
    hrot = fc.CoeffFunction.from_coeffs(np.exp(1j * theta) * h1.coeffs, inst.ambient.dim)
    irot = yg.instance_from_H(ps, hrot, seed=cfg.seed)
    irot = yg.YoungInstance(
        system=irot.system, ambient=irot.ambient, big=irot.big, H=irot.H,
        P=i1.P, n_index=i1.n_index, P_zeros=i1.P_zeros, d=irot.d, seed=irot.seed,
    )
    qrot = yg.q_transform(irot, z_grid=grid)
    phase = float(np.max(np.abs(qrot.q - np.exp(-1j * theta) * q1.q))) / \
        max(float(np.max(np.abs(q1.q))), 1e-300)
    checks.append(check_upper("young.phase_equivariance_rel", phase,
                              _tol(cfg, "phase_rel", 1e-12), ts))

    with np.errstate(invalid="ignore"):
        trows = [
            [zz.real, zz.imag, qq.real, qq.imag, a1.real, a1.imag, a2.real, a2.imag,
             (tt.real if np.isfinite(tt.real) else float("nan")),
             (tt.imag if np.isfinite(tt.imag) else float("nan"))]
            for zz, qq, a1, a2, tt in zip(res.z, res.q, res.a1, res.a2, res.t_estimate)
        ]
    sweeps.append(
        Sweep(
            name="young_q_sweep",
            description=(
                f"annihilator transform samples: weight {w.name}, N={cfg.dim}, "
                f"d={cfg.inflation}, n={inst.n_index}, seed={cfg.seed}"
            ),
            columns=["z_re", "z_im", "q_re", "q_im", "a1_re", "a1_im", "a2_re", "a2_im",
                     "t_re", "t_im"],
            rows=trows,
        )
    )
    return checks, sweeps


# ----------------------------------------------------------------------
# pw suite
# ----------------------------------------------------------------------

def _suite_pw(cfg: ExperimentConfig):
    ts = cfg.tol_scale
    checks, sweeps = [], []

    basis = [pw.sinc_basis(12, k) for k in range(-12, 13)]
    gram = pw.pw_gram(basis)
    checks.append(check_upper("pw.sinc_gram_identity", float(np.max(np.abs(gram - np.eye(25)))),
                              _tol(cfg, "gram_abs", 1e-15), ts))

    svals = {0.0: -math.pi, 1.0: -math.pi / 2, -1.0: -math.pi / 2}
    worst = max(abs(complex(pw.S_eval(p)) - v) for p, v in svals.items())
    checks.append(check_upper("pw.S_limit_values_abs", worst,
                              _tol(cfg, "s_values_abs", 1e-12), ts))
    checks.append(check_upper("pw.S_prime_at_2", abs(pw.S_prime_at_integer(2) - math.pi / 6),
                              _tol(cfg, "s_values_abs", 1e-12), ts))

    x = np.linspace(2.0, 60.0, 20000)
    cdecay = float(np.max(np.abs(pw.S_eval(x)) * x ** 3))
    checks.append(check_upper("pw.S_cubic_decay_constant", cdecay,
                              _tol(cfg, "s_decay_c", 1.25), ts,
                              note="sup |S(x)| x^3 on [2, 60]"))

    fam = pw.punctured_system(8)
    ok = True
    for mu, f in fam:
        for n in range(-8, 9):
            if abs(n) >= 2 and n != mu and f.at_integer(n) != 0:
                ok = False
    checks.append(check_flag("pw.puncture_consistency_exact", ok))

    Ms = cfg.grids.get("pw_sweep_M", [10, 20, 40])
    recs = pw.pw_completeness_sweep(Ms)
    lows = [r.low_mode_null_norm for r in recs]
    checks.append(check_flag("pw.null_dim_formal_defect",
                             all(r.null_dim == 3 for r in recs),
                             note="each pairing determines the sample at mu from modes 0, +-1"))
    checks.append(check_flag("pw.low_mode_null_decreasing",
                             all(lows[i] > lows[i + 1] for i in range(len(lows) - 1)),
                             note=" > ".join(f"{v:.4f}" for v in lows)))
    sweeps.append(
        Sweep(
            name="pw_completeness",
            description="punctured-family finite sections: defect and null localization",
            columns=["M", "sigma_min", "null_dim", "low_mode_null_norm"],
            rows=[[r.M, r.sigma_min, r.null_dim, r.low_mode_null_norm] for r in recs],
        )
    )

    rng = np.random.default_rng(cfg.seed + 91)
    c = rng.standard_normal(5) + 1j * rng.standard_normal(5)
    f = pw.PWFunction(samples=np.concatenate([np.zeros(8), c, np.zeros(8)]), M=10)
    g = pw.PWFunction(samples=np.concatenate([np.zeros(9), c, np.zeros(7)]), M=10)
    # g is f shifted by one sample; orthonormality gives sum a_m conj(a_{m-1})
    closed = complex(np.sum(c[1:] * np.conj(c[:-1])))
    checks.append(check_upper("pw.sampling_parseval_abs", abs(pw.pw_inner(f, g) - closed),
                              _tol(cfg, "parseval_abs", 1e-13), ts))

    G = pw.sin_pi_closed_form()
    h5 = pw.sinc_basis(10, 5)
    r5 = pw.pw_q_transform(G, h5, [0.0], t_max=400.0)
    checks.append(check_upper("pw.q_vanishes_for_orthogonal_H", float(abs(r5.q[0])),
                              r5.tail_bound, ts, note="threshold is the reported tail bound"))
    h0 = pw.sinc_basis(10, 0)
    r0 = pw.pw_q_transform(G, h0, [0.0], t_max=400.0)
    checks.append(check_upper("pw.q_pairing_value_abs", float(abs(r0.q[0] - math.pi ** 2)),
                              r0.tail_bound, ts,
                              note="Q(0) = pi^2 <sinc_0, H> for G = sin(pi z)"))
    za = [0.37, 1.62]
    naive = pw.pw_q_transform(G, h0, za, t_max=60.0, switch_radius=0.0)
    safe = pw.pw_q_transform(G, h0, za, t_max=60.0, switch_radius=1e-3)
    checks.append(
        check_upper("pw.integrand_removability_abs",
                    float(np.max(np.abs(naive.q - safe.q))),
                    _tol(cfg, "removability_abs", 1e-6), ts)
    )
    rows = [[zz.real, zz.imag, qq.real, qq.imag] for zz, qq in zip(r0.z, r0.q)]
    sweeps.append(
        Sweep(
            name="pw_q_samples",
            description="real-line annihilator transform samples (G = sin pi z)",
            columns=["z_re", "z_im", "q_re", "q_im"],
            rows=rows,
        )
    )
    return checks, sweeps


_SUITES = {
    "weights": _suite_weights,
    "kernel": _suite_kernel,
    "systems": _suite_systems,
    "cauchy": _suite_cauchy,
    "young": _suite_young,
    "pw": _suite_pw,
}


def run_suites(cfg: ExperimentConfig) -> ExperimentReport:
    checks: list[CheckRecord] = []
    sweeps: list[Sweep] = []
    for name in cfg.suites():
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                cs, sw = _SUITES[name](cfg)
            checks.extend(cs)
            sweeps.extend(sw)
        except FockLabError as e:
            checks.append(
                CheckRecord(
                    name=f"{name}.suite_error",
                    measured=None,
                    threshold=None,
                    verdict="fail",
                    margin=None,
                    code=e.code,
                    note=str(e),
                )
            )
    return ExperimentReport(
        suite=",".join(cfg.suites()), config=cfg.to_dict(), checks=checks, sweeps=sweeps
    )


def build_report(cfg: ExperimentConfig) -> tuple[ExperimentReport, int]:
    report = run_suites(cfg)
    return report, (1 if report.failed else 0)


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="focklab",
        description="verification suites for truncated radial Fock-space constructions",
    )
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_ in (
        ("run", "run the suites selected by the config"),
        ("young", "run the annihilator-transform suite"),
        ("pw", "run the band-limited suite"),
    ):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--config", required=True, help="path to the JSON config")
        sp.add_argument("--suite", default=None, help="override the config's suite selector")
        sp.add_argument("--out", default=None, help="output directory (default: config out_dir)")
        sp.add_argument("--seed", type=int, default=None, help="override the config's seed")
        sp.add_argument("--tol-scale", type=float, default=None,
                        help="global tolerance multiplier for exploratory runs")
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        cfg = parse_config(args.config)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2
    if args.command in ("young", "pw"):
        cfg.suite = args.command
    if args.suite is not None:
        cfg.suite = args.suite
    if args.seed is not None:
        cfg.seed = args.seed
    if args.tol_scale is not None:
        cfg.tol_scale = args.tol_scale
    out_dir = args.out or cfg.out_dir
    try:
        cfg.suites()
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2

    report, code = build_report(cfg)
    try:
        path = write_report(report, out_dir)
        write_sweeps(report, out_dir)
    except OSError as e:
        print(f"i/o failure: {e}", file=sys.stderr)
        return 3
    for c in report.checks:
        mark = {"pass": "PASS", "fail": "FAIL", "info": "info"}[c.verdict]
        extra = f" measured={c.measured:.3e}" if isinstance(c.measured, float) else ""
        print(f"[{mark}] {c.name}{extra}")
    print(f"report: {path}")
    return code


if __name__ == "__main__":
    sys.exit(main())
