import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from focklab import weights as wt
from focklab.errors import NonpositiveWeight

from conftest import complex_in_disc


def test_regularity_ratio_at_t10_classical():
    # direct arithmetic: log(10 + 20 pi + 2 pi) / (100 pi)
    w = wt.classical()
    expected = math.log(10 + 20 * math.pi + 2 * math.pi) / (100 * math.pi)
    assert abs(expected - 0.0139130) < 5e-7
    measured = math.log(
        10 + abs(float(w.h_prime(10.0))) + abs(float(w.h_second(10.0)))
    ) / float(w.h(10.0))
    assert measured == pytest.approx(expected, rel=1e-12)


def test_regularity_classical_passes_with_tiny_tail():
    rep = wt.regularity_check(wt.classical(), t_max=1e4)
    assert rep.verdict
    # ratio ~ log(t)/t^2 at the far end
    assert rep.ratios[-1] < 1e-5
    assert rep.tail_slope < 0


def test_regularity_constant_weight_fails():
    rep = wt.regularity_check(wt.constant(4.0), t_max=1e4)
    assert not rep.verdict
    assert rep.tail_slope > 0


@pytest.mark.parametrize("w", [wt.power(1.0), wt.power(2.0), wt.power(3.0), wt.slow_log()])
def test_regularity_builtins_pass(w):
    rep = wt.regularity_check(w, t_max=1e4)
    assert rep.verdict, w.name


@pytest.mark.parametrize("w", [wt.classical(), wt.power(3.0), wt.slow_log()])
def test_regularity_tail_eventually_decreasing(w):
    rep = wt.regularity_check(w, t_max=1e4, n_points=128)
    tail = rep.ratios[-32:]
    smooth = np.convolve(tail, np.ones(3) / 3.0, mode="valid")
    assert np.all(np.diff(smooth) < 0)


def test_regularity_preconditions():
    with pytest.raises(ValueError):
        wt.regularity_check(wt.classical(), t_max=5.0)


def test_regularity_nonpositive_weight():
    bad = wt.RadialWeight(
        name="bad",
        h=lambda r: np.asarray(r, float) - 5.0,
        h_prime=lambda r: np.ones_like(np.asarray(r, float)),
        h_second=lambda r: np.zeros_like(np.asarray(r, float)),
    )
    with pytest.raises(NonpositiveWeight):
        wt.regularity_check(bad, t_max=100.0)


def test_oscillation_classical_z10():
    s = wt.oscillation_check(wt.classical(), [10.0 + 0j], eps=0.1)[0]
    assert s.radius == pytest.approx(math.exp(-10 * math.pi), rel=1e-12)
    # mean-value bound h'(10) * radius ~ 1.43e-12; measured sup is close
    assert 5e-13 < s.sup_diff < 2.5e-12
    assert not s.flagged


def test_oscillation_origin_no_smallness():
    s = wt.oscillation_check(wt.classical(), [0j], eps=0.1)[0]
    assert s.radius == 1.0
    assert s.sup_diff == pytest.approx(math.pi, rel=1e-12)
    assert not s.flagged  # |z| < 10 carries no claim


def test_oscillation_linear_weight():
    s = wt.oscillation_check(wt.power(1.0, 2.0), [100.0 + 0j], eps=0.05)[0]
    assert s.sup_diff == pytest.approx(2.0 * math.exp(-10.0), rel=1e-6)


def test_oscillation_underflow_vacuous():
    s = wt.oscillation_check(wt.classical(), [40.0 + 0j], eps=1.0)[0]
    assert s.radius == 0.0
    assert s.sup_diff == 0.0
    assert not s.flagged
    assert "underflow" in s.note


@settings(max_examples=30, deadline=None)
@given(
    z=complex_in_disc(6.0),
    eps_pair=st.tuples(st.floats(0.05, 0.5), st.floats(0.55, 2.0)),
)
def test_oscillation_monotone_in_eps(z, eps_pair):
    w = wt.classical()
    small, large = eps_pair
    s_small = wt.oscillation_check(w, [z], eps=small)[0]
    s_large = wt.oscillation_check(w, [z], eps=large)[0]
    assert s_large.sup_diff <= s_small.sup_diff + 1e-15


@settings(max_examples=50, deadline=None)
@given(r=st.floats(0.0, 30.0), t1=st.floats(0, 2 * np.pi), t2=st.floats(0, 2 * np.pi))
def test_radial_symmetry_exact(r, t1, t2):
    w = wt.slow_log()
    z1 = r * complex(np.cos(t1), np.sin(t1))
    z2 = r * complex(np.cos(t2), np.sin(t2))
    assert float(w.at(abs(z1))) == float(w.at(abs(z2)))


@pytest.mark.parametrize(
    "w", [wt.classical(), wt.power(1.0), wt.power(2.0), wt.power(3.0), wt.slow_log()]
)
def test_derivative_consistency_builtins(w):
    ok, worst = wt.derivative_consistency(w)
    assert ok, f"{w.name}: worst {worst:.3e}"


def test_tabulated_weight_roundtrip(tmp_path):
    t = np.linspace(0.0, 30.0, 3001)
    w0 = wt.classical()
    path = tmp_path / "w.csv"
    rows = np.column_stack([t, w0.h(t), w0.h_prime(t), w0.h_second(t)])
    np.savetxt(path, rows, delimiter=",", header="t,h,hp,hpp", comments="")
    w = wt.from_table(str(path))
    ok, worst = wt.derivative_consistency(w, grid=np.linspace(0.5, 20.0, 17))
    assert ok, worst
    assert float(w.at(3 + 4j)) == pytest.approx(math.pi * 25.0, rel=1e-9)
    with pytest.raises(ValueError):
        w.h(40.0)


def test_tabulated_weight_bad_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("a,b\n1,2\n2,3\n3,4\n4,5\n")
    with pytest.raises(ValueError):
        wt.from_table(str(path))


def test_weight_from_spec_kinds():
    assert wt.weight_from_spec({"kind": "classical"}).classical_flag
    assert wt.weight_from_spec({"kind": "power", "alpha": 3}).name == "r^3"
    assert wt.weight_from_spec({"kind": "slowlog"}).name.startswith("r^2/")
    with pytest.raises(ValueError):
        wt.weight_from_spec({"kind": "nope"})
