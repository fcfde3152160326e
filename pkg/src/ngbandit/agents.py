"""Bandit policies: normal-gamma TS, fixed-precision Gaussian TS, random, oracle.

Every arm is pulled once before any sampling happens; that first reward sets
the arm's posterior to ``(x a, I, 1/2, beta1)``.  Afterwards a TS agent draws
one Q-value per arm in ascending arm order and plays the largest, ties going
to the lowest index.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels, posterior
from .errors import ConfigurationError
from .posterior import NormalGammaParams, sample_qvalue
from .rng import RngStream

AGENT_KINDS = {
    "ng_ts": _kernels.NG_TS,
    "gauss_ts": _kernels.GAUSS_TS,
    "random": _kernels.RANDOM,
    "oracle": _kernels.ORACLE,
}


def kind_code(kind: str) -> int:
    try:
        return AGENT_KINDS[kind]
    except KeyError:
        raise ConfigurationError(f"unknown agent kind {kind!r}; expected one of {sorted(AGENT_KINDS)}") from None


@dataclass
class AgentState:
    kind: str
    contexts: np.ndarray
    fixed_precision: float = 1.0
    beta1: float = posterior.DEFAULT_BETA1
    oracle_index: int | None = None
    prior: object = None
    arms: list = field(default_factory=list)
    counts: np.ndarray = None

    @property
    def n_arms(self) -> int:
        return self.contexts.shape[0]

    @property
    def initialized(self) -> bool:
        return bool(np.all(self.counts > 0))


def make_agent(kind: str, contexts, *, fixed_precision: float = 1.0,
               beta1: float = posterior.DEFAULT_BETA1, oracle_index: int | None = None,
               prior=None) -> AgentState:
    """New agent for arms with the given ``contexts``.

    ``prior`` (a :class:`~ngbandit.environment.BayesPriorSpec`) makes TS arms
    start from ``NG(theta*_k, Lambda*_k, alpha*, beta*)``; by default an arm's
    first reward seeds ``(x a, I, 1/2, beta1)``.
    """
    kind_code(kind)
    contexts = np.ascontiguousarray(contexts, dtype=float)
    if contexts.ndim != 2 or contexts.shape[0] < 1:
        raise ConfigurationError("contexts must be a non-empty (K, d) array")
    if not fixed_precision > 0:
        raise ConfigurationError("fixed_precision must be positive")
    if kind == "oracle" and not (oracle_index is not None and 0 <= oracle_index < contexts.shape[0]):
        raise ConfigurationError("the oracle agent needs a valid oracle_index")
    n_arms = contexts.shape[0]
    arms = [None] * n_arms
    if prior is not None and kind in ("ng_ts", "gauss_ts"):
        if prior.n_arms != n_arms or prior.dim != contexts.shape[1]:
            raise ConfigurationError("prior dimensions do not match the contexts")
        arms = [NormalGammaParams.from_prior(prior.theta_star[k], prior.lambda_star[k],
                                             prior.alpha_star, prior.beta_star) for k in range(n_arms)]
    return AgentState(
        kind=kind, contexts=contexts, fixed_precision=float(fixed_precision), beta1=float(beta1),
        oracle_index=oracle_index, prior=prior, arms=arms, counts=np.zeros(n_arms, dtype=np.int64),
    )


def choose_arm(q) -> int:
    """Index of the largest value, lowest index on ties."""
    return int(_kernels.argmax_first(np.asarray(q, dtype=float)))


def select_action(agent: AgentState, rng: RngStream) -> int:
    """Arm chosen by ``agent`` for the next round.

    TS kinds consume exactly one Q-value draw per arm, in arm order.
    """
    if agent.kind == "oracle":
        return agent.oracle_index
    if agent.kind == "random":
        return int(_kernels.uniform_index(rng.generator, agent.n_arms))
    if not agent.initialized:
        raise RuntimeError("every arm must be observed once before Thompson sampling starts")
    q = np.empty(agent.n_arms)
    for k, params in enumerate(agent.arms):
        tau = agent.fixed_precision if agent.kind == "gauss_ts" else None
        q[k], _ = sample_qvalue(params, agent.contexts[k], rng, tau_tilde=tau)
    return choose_arm(q)


def observe(agent: AgentState, k: int, x: float) -> AgentState:
    """Digest reward ``x`` from arm ``k``; other arms are left untouched."""
    if not 0 <= k < agent.n_arms:
        raise IndexError(f"arm {k} out of range for {agent.n_arms} arms")
    agent.counts[k] += 1
    if agent.kind in ("ng_ts", "gauss_ts"):
        params: NormalGammaParams | None = agent.arms[k]
        if params is None:
            agent.arms[k] = posterior.initial_params(agent.contexts[k], x, agent.beta1)
        else:
            agent.arms[k] = posterior.update(
                params, agent.contexts[k], x, update_precision=agent.kind == "ng_ts"
            )
    return agent
