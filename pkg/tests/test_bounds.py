import math

import mpmath as mp
import numpy as np
import pytest

import oracle
from bounds import (
    C1_p,
    C1_tp,
    C1_tp_max,
    C2_tp,
    C2_tp_max,
    C3_tp,
    big_C,
    big_C_bar,
    big_D,
    big_D_bar,
    bound_set,
    f,
    g,
    h,
    p_bar,
    p_bar_special,
    p_star,
    phi1,
    phi2,
    prior_block_constant,
    t1_star,
    t2_star,
    varphi,
    varphi_bar,
)
from bounds.types import BoundSet, PExponent, Ric
from utils.constants import REGIME_SPECIAL, SQRT2_OVER_2
from utils.errors import DomainError

POINTS = [(0.1, 0.75), (0.3, 0.72), (0.4, 0.8), (0.45, 0.9), (0.46, 0.71), (0.6, 0.74), (0.9, 0.0), (1.0, 0.5)]


# =============================================================================
# Goldens
# =============================================================================

def test_p_star_golden():
    assert p_star() == pytest.approx(0.45418, abs=1e-4)
    assert f(p_star()) == pytest.approx(1.0, abs=1e-9)
    assert p_star() == pytest.approx(float(oracle.p_star()), abs=1e-9)


def test_scalar_goldens():
    assert f(1.0) == pytest.approx(math.sqrt(2.0) / 2.0, rel=1e-12)
    assert g(1.0) == pytest.approx(0.25, rel=1e-12)
    assert phi1(0.5) == pytest.approx(1.0 / 3.0, rel=1e-12)
    assert varphi(1.0) == pytest.approx(6.0 - 4.0 * math.sqrt(2.0), rel=1e-12)


@pytest.mark.parametrize("p", [0.05, 0.2, 0.45, 0.5, 0.77, 1.0])
def test_f_g_match_oracle(p):
    assert f(p) == pytest.approx(float(oracle.f(p)), rel=1e-12)
    assert g(p) == pytest.approx(float(oracle.g(p)), rel=1e-12)


@pytest.mark.parametrize("p,delta", POINTS)
def test_C_D_match_oracle(p, delta):
    assert big_C(p, delta) == pytest.approx(float(oracle.big_C(p, delta)), rel=1e-12)
    assert big_D(p, delta) == pytest.approx(float(oracle.big_D(p, delta)), rel=1e-12)
    assert big_C_bar(p, delta) == pytest.approx(float(oracle.big_C_bar(p, delta)), rel=1e-12)
    assert big_D_bar(p, delta) == pytest.approx(float(oracle.big_D_bar(p, delta)), rel=1e-12)


def test_scalar_functions_accept_arrays():
    p = np.array([0.2, 0.5, 0.8])
    out = big_C(p, 0.75)
    assert out.shape == (3,)
    assert out[1] == pytest.approx(big_C(0.5, 0.75))


def test_f_decreasing_g_increasing():
    grid = np.linspace(0.01, 1.0, 500)
    assert np.all(np.diff(f(grid)) < 0.0)
    assert np.all(np.diff(g(grid)) > 0.0)


def test_f_at_least_one_exactly_left_of_p_star():
    grid = np.linspace(0.01, 1.0, 2000)
    assert np.array_equal(f(grid) >= 1.0, grid <= p_star())


def test_scaled_f_exceeds_one_right_of_p_star():
    p = np.linspace(p_star(), 0.999, 5001)[1:]
    assert np.all(np.sqrt(p) * (2.0 - p) ** (1.0 / p - 0.5) > 1.0)


def test_g_range():
    assert g(1e-6) < 1e-5
    grid = np.linspace(1e-4, 0.999, 1000)
    assert np.all((g(grid) > 0.0) & (g(grid) < 0.25))


# =============================================================================
# Thresholds
# =============================================================================

def test_h_branches():
    assert h(0.3) == pytest.approx(1.0 - 0.5 * 0.3)
    assert h(0.6) == pytest.approx(1.0 - 0.62 * 0.6)


def test_h_at_p_star_takes_left_branch():
    ps = p_star()
    assert h(ps) == pytest.approx(1.0 - 0.5 * ps, rel=1e-15)
    assert h(ps) != pytest.approx(1.0 - 0.62 * ps)


def test_p_bar_branches():
    assert p_bar(0.71) == pytest.approx(50.0 / 31.0 * 0.29)
    assert p_bar(0.75) == pytest.approx(p_star())
    assert p_bar(0.8) == pytest.approx(0.4)
    assert p_bar(SQRT2_OVER_2) == pytest.approx(50.0 / 31.0 * (1.0 - SQRT2_OVER_2))


def test_p_bar_special():
    assert p_bar_special(0.8) == pytest.approx((3.0 + 2.0 * math.sqrt(2.0)) / 2.0 * 0.2)


@pytest.mark.parametrize("delta", [0.5, 1.0, 1.2, math.nan])
def test_p_bar_rejects_delta_outside_range(delta):
    with pytest.raises(DomainError):
        p_bar(delta)


def test_h_threshold_implies_C_below_one():
    p = np.arange(1, 1000) / 1000.0
    for s in np.linspace(0.0, 1.0, 101):
        delta = s * h(p)
        assert np.all(big_C(p, delta) < 1.0)


def test_special_threshold_implies_C_bar_below_one():
    p = np.arange(1, 991) / 1000.0
    line = 1.0 - (6.0 - 4.0 * math.sqrt(2.0)) * p
    for s in np.linspace(0.0, 1.0, 101):
        assert np.all(big_C_bar(p, s * line) < 1.0)


@pytest.mark.parametrize("delta", [0.71, 0.75, 0.8, 0.9, 0.99])
def test_p_bar_gives_C_below_one(delta):
    assert big_C(p_bar(delta), delta) < 1.0
    assert big_C_bar(min(p_bar_special(delta), 0.99), delta) < 1.0


# =============================================================================
# C1(t, p), C2(t, p) maxima
# =============================================================================

def test_maximizers_match_grid_argmax():
    rng = np.random.default_rng(7)
    t = np.linspace(0.0, 1.0, 100_001)
    for _ in range(20):
        p = float(rng.uniform(0.3, 0.99))
        delta = float(rng.uniform(SQRT2_OVER_2, 0.99))
        assert t[np.argmax(C1_tp(t, p, delta))] == pytest.approx(t1_star(p), abs=1e-4)
        assert t[np.argmax(C2_tp(t, p, delta))] == pytest.approx(t2_star(p, delta), abs=1e-4)


@pytest.mark.parametrize("p,delta", [(0.2, 0.75), (0.5, 0.8), (0.9, 0.72)])
def test_closed_form_maxima(p, delta):
    assert C1_tp_max(p, delta) == pytest.approx(C1_tp(t1_star(p), p, delta), rel=1e-12)
    assert C2_tp_max(p, delta) == pytest.approx(C2_tp(t2_star(p, delta), p, delta), rel=1e-12)
    assert C1_tp_max(p, delta) == pytest.approx(g(p) + (C1_tp(0.0, p, delta)), rel=1e-12)


def test_C3_is_scaled_C1_term():
    p, delta, t = 0.5, 0.8, 0.3
    tail = C1_tp(0.0, p, delta)
    assert C3_tp(t, p, delta) - tail == pytest.approx((2.0 - delta) * (C1_tp(t, p, delta) - tail))


@pytest.mark.parametrize("p,delta", [(0.2, 0.75), (0.45, 0.8), (0.5, 0.72), (0.9, 0.95)])
def test_C3_never_exceeds_D(p, delta):
    t = np.linspace(0.0, 1.0, 2001)
    scaled = (C3_tp(t, p, delta) / (1.0 - delta)) ** (p / 2.0)
    assert np.all(scaled <= big_D(p, delta) * (1.0 + 1e-12))
    assert scaled.max() == pytest.approx(big_D(p, delta), rel=1e-6)


def test_t_outside_unit_interval_rejected():
    with pytest.raises(DomainError):
        C1_tp(1.5, 0.5, 0.8)


# =============================================================================
# Block constants and auxiliaries
# =============================================================================

def test_C1_p_is_max_of_shift_constants():
    p = np.linspace(0.01, 1.0, 200)
    exponent = 0.5 - 1.0 / p
    left = np.sqrt(p / 2.0) * (2.0 / (2.0 - p)) ** exponent
    right = 2.0 ** exponent
    assert np.allclose(C1_p(p), np.maximum(left, right), rtol=1e-12)


def test_C1_p_never_exceeds_prior_constant():
    p = np.linspace(0.01, 1.0, 200)
    assert np.all(C1_p(p) <= prior_block_constant(p) * (1.0 + 1e-12))


def test_D_bar_increasing_in_delta():
    delta = np.linspace(0.0, 0.99, 400)
    for p in (0.1, 0.45, 0.7, 1.0):
        assert np.all(np.diff(big_D_bar(p, delta)) > 0.0)


def test_D_branches_meet_at_p_star():
    left, right = oracle.big_D_one_sided(oracle.p_star(), 0.75)
    assert abs(left - right) < mp.mpf("1e-40")
    assert big_D(p_star(), 0.75) == pytest.approx(float(left), rel=1e-9)
    assert big_D(p_star() + 1e-9, 0.75) == pytest.approx(float(right), rel=1e-6)


def test_monotone_auxiliaries():
    t = np.linspace(0.01, 0.99, 300)
    assert np.all(np.diff(phi1(t)) > 0.0)
    assert np.all(np.diff(phi2(t)) < 0.0)
    p = np.linspace(0.01, 1.0, 300)
    assert np.all(varphi_bar(p) <= 0.0)
    assert np.all(np.diff(varphi(p)) > 0.0)


# =============================================================================
# BoundSet
# =============================================================================

def test_bound_set_golden_point():
    bs = bound_set(0.4, 0.8)
    assert bs.valid
    assert bs.reason is None
    expected = oracle.theorem_constants(0.4, 0.8)
    for name, value in expected.items():
        assert getattr(bs, name) == pytest.approx(float(value), rel=1e-10), name


def test_bound_set_valid_up_to_p_bar():
    for delta in np.linspace(SQRT2_OVER_2, 0.999, 60):
        limit = p_bar(delta)
        for p in limit * np.linspace(0.01, 1.0, 40):
            bs = bound_set(float(p), float(delta))
            assert bs.valid, (p, delta, bs.reason)


def test_bound_set_invalid_when_C_reaches_one():
    bs = bound_set(0.9, 0.95)
    assert bs.c_p >= 1.0
    assert not bs.valid
    assert "C(p)" in bs.reason
    assert math.isnan(bs.c0)
    assert math.isnan(bs.d0)


def test_bound_set_p_one_and_small_delta_are_invalid():
    assert not bound_set(1.0, 0.8).valid
    low = bound_set(0.5, 0.5)
    assert not low.valid_general
    assert "sqrt(2)/2" in low.reason_general


def test_bound_set_special_regime_flag():
    bs = bound_set(0.6, 0.8, regime=REGIME_SPECIAL)
    assert bs.valid == bs.valid_special
    assert bs.valid_special
    expected = oracle.theorem_constants(0.6, 0.8)
    assert bs.c0_bar == pytest.approx(float(expected["c0_bar"]), rel=1e-10)


def test_bound_set_json_safe_dict():
    data = bound_set(0.9, 0.95).to_dict(json_safe=True)
    assert data["c0"] is None
    assert data["valid"] is False
    assert data["p"] == 0.9


@pytest.mark.parametrize("p,delta", [(0.0, 0.8), (1.2, 0.8), (0.5, 1.0), (0.5, -0.1)])
def test_bound_set_domain_errors(p, delta):
    with pytest.raises(DomainError):
        bound_set(p, delta)


def test_parameter_types():
    assert float(PExponent(0.5)) == 0.5
    assert float(Ric(0.3)) == 0.3
    with pytest.raises(DomainError):
        PExponent(0.0)
    with pytest.raises(DomainError):
        Ric(1.0)
    with pytest.raises(DomainError):
        BoundSet(**{**bound_set(0.4, 0.8).__dict__, "regime": "other"})


def test_oracle_precision():
    assert mp.mp.dps == 50
