import json
from itertools import combinations

import numpy as np
import pytest

from solver import (
    IrlsOptions,
    SensingProblem,
    irls_recover,
    lp_norm,
    lp_norm_pth_power,
    make_instance,
    make_matrix,
)
from utils.constants import EXACT_RECOVERY_TOL, FEAS_REL_TOL, NOISELESS_RESIDUAL
from utils.errors import ConfigError, ConvergenceWarning, DimensionError, DomainError, RankDeficiencyError


def _exact(x_ref, x_hat) -> bool:
    return np.linalg.norm(x_ref - x_hat) <= EXACT_RECOVERY_TOL * max(1.0, np.linalg.norm(x_ref))


def _flags_truthful(prob, out, x_ref, p) -> bool:
    residual = np.linalg.norm(prob.y - prob.A @ out.x_hat)
    if prob.epsilon == 0.0:
        feasible = residual <= NOISELESS_RESIDUAL * np.linalg.norm(prob.y)
    else:
        feasible = residual <= prob.epsilon * (1.0 + FEAS_REL_TOL)
    dominates = lp_norm_pth_power(out.x_hat, p) <= lp_norm_pth_power(x_ref, p) * (1.0 + 1e-9) + 1e-12
    return out.feasible == feasible and out.objective_dominates_reference == dominates


def _brute_force_min(A, y, p) -> float:
    """Smallest ||x||_p^p over basic solutions of A x = y."""
    m, n = A.shape
    best = np.inf
    for support in combinations(range(n), m):
        cols = list(support)
        sub = A[:, cols]
        if np.linalg.matrix_rank(sub) < m:
            continue
        best = min(best, lp_norm_pth_power(np.linalg.solve(sub, y), p))
    return best


# =============================================================================
# Norms
# =============================================================================

def test_lp_norms():
    assert lp_norm([3.0, -4.0], 1.0) == pytest.approx(7.0)
    assert lp_norm_pth_power([1.0, 4.0], 0.5) == pytest.approx(3.0)
    assert lp_norm([1.0, 1.0], 0.5) == pytest.approx(4.0)
    assert lp_norm(np.zeros(3), 0.3) == 0.0


@pytest.mark.parametrize("p", [0.0, -0.5, 1.5, np.nan])
def test_lp_norm_rejects_p(p):
    with pytest.raises(DomainError):
        lp_norm([1.0], p)


# =============================================================================
# Instances
# =============================================================================

def test_make_instance_deterministic():
    prob_a, x_a = make_instance(6, 10, 2, noise_eps=0.1, seed=5)
    prob_b, x_b = make_instance(6, 10, 2, noise_eps=0.1, seed=5)
    assert np.array_equal(prob_a.A, prob_b.A)
    assert np.array_equal(prob_a.y, prob_b.y)
    assert np.array_equal(x_a, x_b)


def test_make_instance_shapes_and_noise():
    prob, x_ref = make_instance(6, 10, 2, noise_eps=0.1, seed=1)
    assert prob.A.shape == (6, 10)
    assert np.count_nonzero(x_ref) == 2
    assert np.allclose(np.linalg.norm(prob.A, axis=0), 1.0)
    assert np.linalg.norm(prob.y - prob.A @ x_ref) == pytest.approx(0.1)
    assert prob.epsilon == 0.1


def test_compressible_signal_is_dense():
    _, x_ref = make_instance(6, 10, 2, seed=1, signal="compressible")
    assert np.count_nonzero(x_ref) == 10
    assert sorted(np.abs(x_ref))[::-1][0] == pytest.approx(1.0)


def test_bernoulli_ensemble():
    A = make_matrix(4, 6, "bernoulli", np.random.default_rng(0))
    assert np.allclose(np.abs(A), 0.5)


def test_make_instance_errors():
    with pytest.raises(DimensionError):
        make_instance(3, 10, 4)
    with pytest.raises(DimensionError):
        make_instance(12, 10, 2)
    with pytest.raises(ConfigError):
        make_instance(6, 10, 2, ensemble="uniform")
    with pytest.raises(ConfigError):
        make_instance(6, 10, 2, signal="dense")


def test_sensing_problem_validation():
    A = np.eye(3)
    with pytest.raises(DimensionError):
        SensingProblem(A=A, y=np.ones(2), epsilon=0.0, k=1)
    with pytest.raises(DomainError):
        SensingProblem(A=A, y=np.ones(3), epsilon=-1.0, k=1)
    with pytest.raises(DimensionError):
        SensingProblem(A=A, y=np.ones(3), epsilon=0.0, k=4)


# =============================================================================
# IRLS
# =============================================================================

def test_noiseless_exact_recovery_rate():
    hits = 0
    for seed in range(20):
        prob, x_ref = make_instance(6, 10, 2, seed=seed)
        out = irls_recover(prob, 0.5, x_ref=x_ref)
        assert out.feasible
        assert _flags_truthful(prob, out, x_ref, 0.5)
        hits += _exact(x_ref, out.x_hat)
    assert hits >= 16


def test_noisy_recovery_is_feasible_and_close():
    for seed in range(5):
        prob, x_ref = make_instance(8, 12, 2, noise_eps=0.01, seed=seed)
        out = irls_recover(prob, 0.5, x_ref=x_ref)
        assert out.feasible
        assert out.residual <= 0.01 * (1.0 + FEAS_REL_TOL)
        assert out.lambda_used is not None
        assert _flags_truthful(prob, out, x_ref, 0.5)


def test_small_observation_returns_zero():
    prob = SensingProblem(A=np.eye(3)[:2], y=np.array([0.01, 0.0]), epsilon=0.1, k=1)
    out = irls_recover(prob, 0.5)
    assert np.array_equal(out.x_hat, np.zeros(3))
    assert out.feasible
    assert out.objective_dominates_reference is None


def test_zero_observation_noiseless():
    prob = SensingProblem(A=make_matrix(4, 6, "gaussian", np.random.default_rng(1)), y=np.zeros(4),
                          epsilon=0.0, k=1)
    out = irls_recover(prob, 0.5, x_ref=np.zeros(6))
    assert np.array_equal(out.x_hat, np.zeros(6))
    assert out.certified


def test_rank_deficient_noiseless_raises():
    A = np.array([[1.0, 0.0, 1.0], [1.0, 0.0, 1.0]])
    prob = SensingProblem(A=A, y=np.array([1.0, 1.0]), epsilon=0.0, k=1)
    with pytest.raises(RankDeficiencyError):
        irls_recover(prob, 0.5)


def test_scale_invariance():
    prob, _ = make_instance(6, 10, 2, seed=3)
    scaled = SensingProblem(A=prob.A, y=1000.0 * prob.y, epsilon=0.0, k=2)
    base = irls_recover(prob, 0.5).x_hat
    assert np.allclose(irls_recover(scaled, 0.5).x_hat, 1000.0 * base, rtol=1e-6, atol=1e-9)


def test_noisy_scale_equivariance():
    A = make_matrix(6, 10, "gaussian", np.random.default_rng(8))
    x = np.zeros(10)
    x[[1, 5]] = [2.0, -1.5]
    e = np.random.default_rng(9).standard_normal(6)
    y = A @ x + 0.02 * e / np.linalg.norm(e)
    base = irls_recover(SensingProblem(A=A, y=y, epsilon=0.02, k=2), 0.5)
    scaled = irls_recover(SensingProblem(A=A, y=4.0 * y, epsilon=0.08, k=2), 0.5)
    assert scaled.feasible and base.feasible
    assert np.allclose(scaled.x_hat, 4.0 * base.x_hat, rtol=1e-5, atol=1e-6 * np.linalg.norm(base.x_hat))
    assert scaled.residual == pytest.approx(4.0 * base.residual, rel=1e-6)


def test_square_orthonormal_returns_transpose_solution():
    rng = np.random.default_rng(10)
    Q = np.linalg.qr(rng.standard_normal((5, 5)))[0]
    y = rng.standard_normal(5)
    out = irls_recover(SensingProblem(A=Q, y=y, epsilon=0.0, k=1), 0.7)
    assert np.allclose(out.x_hat, Q.T @ y, atol=1e-10)
    assert out.feasible


def test_noiseless_objective_never_increases():
    for seed in range(5):
        prob, x_ref = make_instance(6, 10, 2, seed=seed)
        assert irls_recover(prob, 0.5, x_ref=x_ref).objective_increases == 0


def test_iteration_cap_warns():
    prob, x_ref = make_instance(6, 10, 2, seed=2)
    opts = IrlsOptions(max_iter_per_level=3, final_step_tol=0.0)
    with pytest.warns(ConvergenceWarning):
        out = irls_recover(prob, 0.5, opts=opts, x_ref=x_ref)
    assert not out.converged
    assert _flags_truthful(prob, out, x_ref, 0.5)


def test_x_ref_length_checked():
    prob, _ = make_instance(6, 10, 2, seed=2)
    with pytest.raises(DimensionError):
        irls_recover(prob, 0.5, x_ref=np.zeros(9))


def test_outcome_dict():
    prob, x_ref = make_instance(6, 10, 2, seed=4)
    data = irls_recover(prob, 0.5, x_ref=x_ref).to_dict()
    assert len(data["x_hat"]) == 10
    assert set(data) >= {"residual", "objective_p", "feasible", "objective_dominates_reference", "converged"}


@pytest.mark.slow
def test_matches_brute_force_minimizer():
    matches = 0
    trials = 200
    for seed in range(trials):
        prob, x_ref = make_instance(6, 10, 2, seed=1000 + seed)
        out = irls_recover(prob, 0.5, x_ref=x_ref)
        assert _flags_truthful(prob, out, x_ref, 0.5)
        best = _brute_force_min(prob.A, prob.y, 0.5)
        matches += out.feasible and out.objective_p <= best * (1.0 + 1e-6) + 1e-12
    assert matches >= 0.9 * trials


def test_outcome_dict_is_json_serializable():
    prob, x_ref = make_instance(6, 10, 2, seed=3)
    out = irls_recover(prob, 0.5, x_ref=x_ref)
    assert type(out.converged) is bool
    assert type(out.objective_dominates_reference) is bool
    json.dumps(out.to_dict())
    data = out.to_dict(json_safe=True)
    assert json.loads(json.dumps(data)) == data
