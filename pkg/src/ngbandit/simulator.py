"""Episode runner and Bayesian-regret estimation.

Replication ``r`` of a run with base seed ``s`` draws its environment from
``RngStream(s, r).substream(0)`` and its policy/reward randomness from
``RngStream(s, r).substream(tag)`` where ``tag`` depends only on the agent kind.
Different agents run with the same seed therefore face identical environments
(common random numbers), and every trace is a pure function of
``(seed, r, config)``, which makes results independent of the worker count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .agents import kind_code, make_agent, observe, select_action
from .environment import (
    BayesPriorSpec,
    EnvironmentInstance,
    generate_contexts,
    sample_environment,
    sample_reward,
)
from .errors import ConfigurationError
from .posterior import DEFAULT_BETA1
from .rng import MASK64, RngStream

ENV_TAG = 0
# "first_pull": the first reward of an arm seeds (x a, I, 1/2, beta1).
# "matched": every arm starts from the environment prior NG(theta*, Lambda*, alpha*, beta*).
PRIOR_MODES = ("first_pull", "matched")
AGENT_TAGS = {"ng_ts": 1, "gauss_ts": 2, "random": 3, "oracle": 4}
# Stream reserved for the context set shared across replications.
SHARED_CONTEXT_STREAM = MASK64
_EMPTY2 = np.zeros((0, 0))
_EMPTY3 = np.zeros((0, 0, 0))


@dataclass(frozen=True)
class RunConfig:
    spec: BayesPriorSpec
    horizon: int
    replications: int
    agent: str = "ng_ts"
    seed: int = 0
    record_stride: int = 10
    shared_contexts: bool = False
    fixed_precision: float = 1.0
    beta1: float = DEFAULT_BETA1
    prior: str = "first_pull"

    def __post_init__(self):
        kind_code(self.agent)
        if self.prior not in PRIOR_MODES:
            raise ConfigurationError(f"prior must be one of {PRIOR_MODES}, got {self.prior!r}")
        if self.replications < 1:
            raise ConfigurationError("replications must be >= 1")
        if self.record_stride < 1:
            raise ConfigurationError("record_stride must be >= 1")
        if self.horizon < self.spec.n_arms:
            raise ConfigurationError("the horizon must cover the initial pull of every arm (T >= K)")
        if not self.fixed_precision > 0 or not self.beta1 > 0:
            raise ConfigurationError("fixed_precision and beta1 must be positive")


@dataclass
class RegretTrace:
    rounds: np.ndarray
    cumulative: np.ndarray
    counts: np.ndarray
    env_id: int = 0

    @property
    def final_regret(self) -> float:
        return float(self.cumulative[-1])


@dataclass
class BayesRegretCurve:
    agent: str
    rounds: np.ndarray
    mean: np.ndarray
    stderr: np.ndarray
    replications: int

    @property
    def final_mean(self) -> float:
        return float(self.mean[-1])

    @property
    def final_stderr(self) -> float:
        return float(self.stderr[-1])

    def at(self, round_: int) -> tuple[float, float]:
        """``(mean, stderr)`` at a recorded round."""
        idx = np.flatnonzero(self.rounds == round_)
        if idx.size == 0:
            raise KeyError(f"round {round_} was not recorded")
        return float(self.mean[idx[0]]), float(self.stderr[idx[0]])


def snapshot_rounds(horizon: int, stride: int) -> np.ndarray:
    """Rounds (1-based) at which cumulative regret is recorded."""
    rounds = np.arange(stride, horizon + 1, stride, dtype=np.int64)
    if rounds.size == 0 or rounds[-1] != horizon:
        rounds = np.append(rounds, np.int64(horizon))
    return rounds


def run_episode(env: EnvironmentInstance, kind: str, horizon: int, rng: RngStream, *,
                stride: int = 1, fixed_precision: float = 1.0, beta1: float = DEFAULT_BETA1,
                prior: BayesPriorSpec | None = None, env_id: int = 0) -> RegretTrace:
    """Play one episode of ``horizon`` rounds (the first K are forced pulls).

    TS agents start from ``prior`` when it is given and otherwise use the
    first-pull initialization with ``beta1``.
    """
    code = kind_code(kind)
    if horizon < env.n_arms:
        raise ConfigurationError(f"horizon {horizon} is shorter than the {env.n_arms} forced pulls")
    if stride < 1:
        raise ConfigurationError("stride must be >= 1")
    rounds = snapshot_rounds(horizon, stride)
    trace = np.empty(rounds.size)
    counts = np.zeros(env.n_arms, dtype=np.int64)
    if prior is None:
        first_pull, p_u, p_lam, p_a, p_b = True, _EMPTY2, _EMPTY3, 1.0, 1.0
    else:
        if prior.n_arms != env.n_arms or prior.dim != env.contexts.shape[1]:
            raise ConfigurationError("prior dimensions do not match the environment")
        first_pull, p_u, p_lam = False, prior.theta_star, prior.lambda_star
        p_a, p_b = float(prior.alpha_star), float(prior.beta_star)
    _kernels.episode(
        code, env.contexts, env.mu, env.tau, env.delta, env.optimal_index, int(horizon), int(stride),
        float(fixed_precision), float(beta1), rng.generator, trace, counts,
        first_pull, p_u, p_lam, p_a, p_b,
    )
    return RegretTrace(rounds, trace, counts, env_id)


def run_episode_reference(env: EnvironmentInstance, kind: str, horizon: int, rng: RngStream, *,
                          stride: int = 1, fixed_precision: float = 1.0,
                          beta1: float = DEFAULT_BETA1, prior: BayesPriorSpec | None = None,
                          env_id: int = 0) -> RegretTrace:
    """Same as :func:`run_episode`, driven through the agent API one round at a time."""
    agent = make_agent(kind, env.contexts, fixed_precision=fixed_precision, beta1=beta1,
                       oracle_index=env.optimal_index, prior=prior)
    rounds = snapshot_rounds(horizon, stride)
    trace = np.empty(rounds.size)
    cum, snap = 0.0, 0
    for t in range(horizon):
        k = t if t < env.n_arms else select_action(agent, rng)
        observe(agent, k, sample_reward(env, k, rng))
        cum += env.delta[k]
        if snap < rounds.size and rounds[snap] == t + 1:
            trace[snap] = cum
            snap += 1
    return RegretTrace(rounds, trace, agent.counts.copy(), env_id)


def worker_count(workers: int | None = None) -> int:
    """Explicit ``workers``, else ``NGBANDIT_THREADS``, else the CPU count."""
    if workers is None:
        env = os.environ.get("NGBANDIT_THREADS", "").strip()
        if env:
            try:
                workers = int(env)
            except ValueError:
                raise ConfigurationError(f"NGBANDIT_THREADS must be an integer, got {env!r}") from None
        else:
            workers = os.cpu_count() or 1
    return max(1, int(workers))


def parallel_map(fn, items, workers: int | None = None) -> list:
    """``[fn(i) for i in items]`` on a thread pool; output order follows ``items``."""
    items = list(items)
    n = worker_count(workers)
    if n == 1 or len(items) <= 1:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def shared_contexts(spec: BayesPriorSpec, seed: int) -> np.ndarray:
    return generate_contexts(spec.n_arms, spec.dim, RngStream(seed, SHARED_CONTEXT_STREAM))


def replication_environment(spec: BayesPriorSpec, seed: int, replication: int,
                            contexts: np.ndarray | None = None) -> EnvironmentInstance:
    """Environment of replication ``replication``; fresh contexts unless given."""
    env_rng = RngStream(seed, replication).substream(ENV_TAG)
    if contexts is None:
        contexts = generate_contexts(spec.n_arms, spec.dim, env_rng)
    return sample_environment(spec, contexts, env_rng)


def _aggregate(agent: str, rounds: np.ndarray, traces: np.ndarray) -> BayesRegretCurve:
    reps = traces.shape[0]
    mean = traces.mean(axis=0)
    if reps > 1:
        stderr = traces.std(axis=0, ddof=1) / math.sqrt(reps)
    else:
        stderr = np.full(rounds.size, np.nan)
    return BayesRegretCurve(agent, rounds, mean, stderr, reps)


def run_replications(config: RunConfig, workers: int | None = None) -> list[RegretTrace]:
    contexts = shared_contexts(config.spec, config.seed) if config.shared_contexts else None
    tag = AGENT_TAGS[config.agent]
    prior = config.spec if config.prior == "matched" else None

    def one(r: int) -> RegretTrace:
        env = replication_environment(config.spec, config.seed, r, contexts)
        rng = RngStream(config.seed, r).substream(tag)
        return run_episode(env, config.agent, config.horizon, rng, stride=config.record_stride,
                           fixed_precision=config.fixed_precision, beta1=config.beta1,
                           prior=prior, env_id=r)

    return parallel_map(one, range(config.replications), workers)


def estimate_bayes_regret(config: RunConfig, workers: int | None = None) -> BayesRegretCurve:
    """Mean cumulative regret (and its standard error) over sampled environments."""
    traces = run_replications(config, workers)
    stacked = np.stack([tr.cumulative for tr in traces])
    return _aggregate(config.agent, traces[0].rounds, stacked)


def fixed_environment_counts(env: EnvironmentInstance, kind: str, horizon: int, episodes: int,
                             seed: int, *, stream_id: int = 0, fixed_precision: float = 1.0,
                             beta1: float = DEFAULT_BETA1, prior: BayesPriorSpec | None = None,
                             workers: int | None = None) -> np.ndarray:
    """Final pull counts ``n_k(T)`` of ``episodes`` independent runs on one environment.

    Episode ``e`` uses ``RngStream(seed, stream_id).substream(e)``.
    """
    base = RngStream(seed, stream_id)

    def one(e: int) -> np.ndarray:
        return run_episode(env, kind, horizon, base.substream(e), stride=horizon,
                           fixed_precision=fixed_precision, beta1=beta1, prior=prior).counts

    return np.stack(parallel_map(one, range(episodes), workers))
