"""Problem instances drawn from the normal-gamma Bayesian prior."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import InvalidParameterError
from .mathcore import check_spd
from .rng import RngStream

TAU_FLOOR = 1e-300


@dataclass(frozen=True, eq=False)
class BayesPriorSpec:
    """Hyperparameters of the environment distribution.

    Every arm ``k`` draws ``tau_k ~ Gamma(alpha_star, beta_star)`` and
    ``theta_k | tau_k ~ N(theta_star_k, (tau_k lambda_star_k)^{-1})``.
    """

    n_arms: int
    dim: int
    alpha_star: float
    beta_star: float
    lambda_star: np.ndarray = field(default=None, repr=False)
    theta_star: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        if self.n_arms < 1 or self.dim < 1:
            raise InvalidParameterError("n_arms and dim must be >= 1")
        if not (self.alpha_star > 0 and self.beta_star > 0):
            raise InvalidParameterError("alpha_star and beta_star must be positive")
        lam = self.lambda_star
        if lam is None:
            lam = np.broadcast_to(np.eye(self.dim), (self.n_arms, self.dim, self.dim))
        lam = np.array(lam, dtype=float)
        if lam.shape == (self.dim, self.dim):
            lam = np.broadcast_to(lam, (self.n_arms, self.dim, self.dim)).copy()
        if lam.shape != (self.n_arms, self.dim, self.dim):
            raise InvalidParameterError(f"lambda_star has shape {lam.shape}")
        for k in range(self.n_arms):
            check_spd(lam[k], f"lambda_star[{k}]")
        theta = np.zeros((self.n_arms, self.dim)) if self.theta_star is None else np.array(self.theta_star, dtype=float)
        if theta.shape != (self.n_arms, self.dim):
            raise InvalidParameterError(f"theta_star has shape {theta.shape}")
        cov_chol = np.stack([check_spd(np.linalg.inv(lam[k]), "prior covariance", atol=1e-9)
                             for k in range(self.n_arms)])
        for arr in (lam, theta, cov_chol):
            arr.setflags(write=False)
        object.__setattr__(self, "lambda_star", lam)
        object.__setattr__(self, "theta_star", theta)
        object.__setattr__(self, "_prior_cov_chol", cov_chol)

    def warn_if_outside_theory(self) -> bool:
        """Warn (and return False) when ``alpha_star <= 5/2``."""
        if self.alpha_star <= 2.5:
            warnings.warn(
                f"alpha_star={self.alpha_star} <= 5/2: the regret-bound analysis does not apply",
                stacklevel=2,
            )
            return False
        return True


@dataclass(frozen=True, eq=False)
class EnvironmentInstance:
    contexts: np.ndarray
    theta: np.ndarray
    tau: np.ndarray
    mu: np.ndarray
    mu_star: float
    optimal_index: int
    delta: np.ndarray
    tau0: float
    lambda_k_star: np.ndarray

    @property
    def n_arms(self) -> int:
        return self.mu.shape[0]

    @classmethod
    def from_parameters(cls, contexts, theta, tau, lambda_star=None) -> "EnvironmentInstance":
        """Fill in the derived quantities for explicit ``(a_k, theta_k, tau_k)``."""
        contexts = np.array(contexts, dtype=float)
        theta = np.array(theta, dtype=float)
        tau = np.array(tau, dtype=float).ravel()
        n_arms, dim = contexts.shape
        if theta.shape != (n_arms, dim) or tau.shape != (n_arms,):
            raise InvalidParameterError("contexts, theta and tau disagree in shape")
        if np.any(~(tau > 0)):
            raise InvalidParameterError("every tau must be positive")
        if lambda_star is None:
            lam_k = 1.0 / np.einsum("kd,kd->k", contexts, contexts)
        else:
            lambda_star = np.broadcast_to(np.asarray(lambda_star, dtype=float), (n_arms, dim, dim))
            solved = np.linalg.solve(lambda_star, contexts[:, :, None])[:, :, 0]
            lam_k = 1.0 / np.einsum("kd,kd->k", contexts, solved)
        mu = np.einsum("kd,kd->k", contexts, theta)
        opt = int(np.argmax(mu))
        mu_star = float(mu[opt])
        delta = mu_star - mu
        delta[opt] = 0.0
        arrays = (contexts, theta, tau, mu, delta, lam_k)
        for arr in arrays:
            arr.setflags(write=False)
        return cls(contexts, theta, tau, mu, mu_star, opt, delta, float(tau.min()), lam_k)


def generate_contexts(n_arms: int, dim: int, rng: RngStream) -> np.ndarray:
    """Unit vectors: uniform on ``[-1/sqrt(d), 1/sqrt(d)]^d`` then normalised."""
    if n_arms < 1 or dim < 1:
        raise InvalidParameterError("n_arms and dim must be >= 1")
    half = 1.0 / math.sqrt(dim)
    out = np.empty((n_arms, dim))
    gen = rng.generator
    for k in range(n_arms):
        while True:
            v = gen.uniform(-half, half, size=dim)
            norm = math.sqrt(float(v @ v))
            if norm > 0.0:
                break
        out[k] = v / norm
    return out


def sample_environment(spec: BayesPriorSpec, contexts, rng: RngStream) -> EnvironmentInstance:
    """Draw ``(theta_k, tau_k)`` independently per arm from the prior."""
    contexts = np.ascontiguousarray(contexts, dtype=float)
    if contexts.shape != (spec.n_arms, spec.dim):
        raise InvalidParameterError(
            f"expected {spec.n_arms} contexts of dimension {spec.dim}, got {contexts.shape}"
        )
    tau = np.empty(spec.n_arms)
    theta = np.empty((spec.n_arms, spec.dim))
    _kernels.fill_prior_arms(rng.generator, float(spec.alpha_star), float(spec.beta_star), TAU_FLOOR,
                             spec.theta_star, spec._prior_cov_chol, tau, theta)
    return EnvironmentInstance.from_parameters(contexts, theta, tau, spec.lambda_star)


def sample_reward(env: EnvironmentInstance, k: int, rng: RngStream) -> float:
    """One reward from ``N(mu_k, 1/tau_k)``."""
    if not 0 <= k < env.n_arms:
        raise IndexError(f"arm {k} out of range for {env.n_arms} arms")
    return float(env.mu[k] + rng.generator.standard_normal() / math.sqrt(env.tau[k]))
