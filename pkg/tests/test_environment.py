import math
import warnings

import numpy as np
import pytest
from scipy import stats

from ngbandit import RngStream
from ngbandit.environment import (
    BayesPriorSpec,
    EnvironmentInstance,
    generate_contexts,
    sample_environment,
    sample_reward,
)
from ngbandit.errors import InvalidParameterError


def test_contexts_are_unit(rng):
    c = generate_contexts(30, 5, rng)
    assert c.shape == (30, 5)
    assert np.all(np.abs(np.linalg.norm(c, axis=1) - 1.0) <= 1e-12)


def test_contexts_one_dimensional(rng):
    c = generate_contexts(50, 1, rng)
    assert set(np.unique(c)) <= {-1.0, 1.0}


def test_contexts_centred(rng):
    c = generate_contexts(100_000, 5, rng)
    se = c.std(axis=0) / math.sqrt(c.shape[0])
    assert np.all(np.abs(c.mean(axis=0)) < 5 * se)


def test_context_coordinates_stay_in_cube_before_scaling(rng):
    # normalising a cube draw never flips signs, so the sign pattern is uniform
    c = generate_contexts(80_000, 2, rng)
    quadrant = (c[:, 0] > 0).astype(int) * 2 + (c[:, 1] > 0)
    counts = np.bincount(quadrant, minlength=4)
    assert stats.chisquare(counts).pvalue > 1e-3


def test_prior_marginal_is_standard_normal():
    spec = BayesPriorSpec(1, 3, 3.0, 2.0)
    rng = RngStream(1, 0)
    a = generate_contexts(1, 3, rng)
    z = np.empty(100_000)
    for i in range(z.size):
        env = sample_environment(spec, a, rng)
        z[i] = env.mu[0] * math.sqrt(env.lambda_k_star[0] * env.tau[0])
    assert stats.kstest(z, "norm").pvalue > 0.01


def test_single_arm():
    spec = BayesPriorSpec(1, 2, 3.0, 2.0)
    env = sample_environment(spec, [[0.6, 0.8]], RngStream(0))
    assert env.optimal_index == 0 and np.array_equal(env.delta, [0.0])


def test_tau_mean():
    spec = BayesPriorSpec(1000, 1, 3.0, 2.0)
    rng = RngStream(2, 0)
    ctx = np.ones((1000, 1))
    taus = np.concatenate([sample_environment(spec, ctx, rng).tau for _ in range(1000)])
    assert abs(taus.mean() - 1.5) < 0.01


def test_environment_invariants(rng):
    spec = BayesPriorSpec(12, 4, 3.0, 1.0)
    env = sample_environment(spec, generate_contexts(12, 4, rng), rng)
    assert env.delta[env.optimal_index] == 0.0
    assert np.allclose(env.delta, env.mu_star - env.mu, atol=0, rtol=0)
    assert np.all(env.delta >= 0)
    assert env.tau0 == env.tau.min()
    assert np.allclose(env.lambda_k_star, 1.0, rtol=1e-15)
    with pytest.raises(ValueError):
        env.mu[0] = 1.0


def test_regeneration_is_identical():
    spec = BayesPriorSpec(5, 3, 3.0, 2.0)
    ctx = generate_contexts(5, 3, RngStream(4, 4))
    e1 = sample_environment(spec, ctx, RngStream(4, 5))
    e2 = sample_environment(spec, ctx, RngStream(4, 5))
    assert np.array_equal(e1.theta, e2.theta) and np.array_equal(e1.tau, e2.tau)


def test_general_lambda_star():
    lam = np.array([[2.0, 0.5], [0.5, 1.0]])
    spec = BayesPriorSpec(3, 2, 3.0, 2.0, lambda_star=lam)
    ctx = generate_contexts(3, 2, RngStream(5))
    env = sample_environment(spec, ctx, RngStream(6))
    want = [1.0 / (a @ np.linalg.solve(lam, a)) for a in ctx]
    assert np.allclose(env.lambda_k_star, want, rtol=1e-13)


def test_ties_go_to_lowest_index():
    env = EnvironmentInstance.from_parameters([[1.0], [1.0], [1.0]], [[0.0], [2.0], [2.0]], [1, 1, 1])
    assert env.optimal_index == 1


def test_spec_validation():
    with pytest.raises(InvalidParameterError):
        BayesPriorSpec(0, 2, 3.0, 1.0)
    with pytest.raises(InvalidParameterError):
        BayesPriorSpec(2, 2, -3.0, 1.0)
    with pytest.raises(ValueError):
        BayesPriorSpec(2, 2, 3.0, 1.0, lambda_star=-np.eye(2))
    with pytest.raises(InvalidParameterError):
        sample_environment(BayesPriorSpec(2, 2, 3.0, 1.0), np.ones((3, 2)), RngStream(0))


def test_theory_warning():
    with pytest.warns(UserWarning):
        assert not BayesPriorSpec(2, 2, 2.5, 1.0).warn_if_outside_theory()
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert BayesPriorSpec(2, 2, 3.0, 1.0).warn_if_outside_theory()


def test_reward_moments():
    env = EnvironmentInstance.from_parameters([[1.0]], [[0.7]], [2.5])
    rng = RngStream(7)
    x = np.array([sample_reward(env, 0, rng) for _ in range(1_000_000)])
    se = math.sqrt(1 / 2.5 / x.size)
    assert abs(x.mean() - 0.7) < 5 * se
    assert abs(x.var(ddof=1) - 0.4) < 5 * 0.4 * math.sqrt(2 / (x.size - 1))


def test_reward_degenerate_noise():
    env = EnvironmentInstance.from_parameters([[1.0]], [[0.7]], [1e8])
    rng = RngStream(8)
    assert all(abs(sample_reward(env, 0, rng) - 0.7) < 1e-3 for _ in range(1000))


def test_reward_bad_arm():
    env = EnvironmentInstance.from_parameters([[1.0], [1.0]], [[0.0], [1.0]], [1.0, 1.0])
    with pytest.raises(IndexError):
        sample_reward(env, 3, RngStream(0))


def test_from_parameters_copies_inputs():
    theta = np.array([[0.0], [1.0]])
    EnvironmentInstance.from_parameters([[1.0], [1.0]], theta, [1.0, 1.0])
    theta[0, 0] = 5.0    # caller's array stays writable
