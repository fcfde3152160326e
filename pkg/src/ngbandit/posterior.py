"""Normal-gamma conjugate posterior for one arm.

The posterior over ``(theta, tau)`` is ``tau ~ Gamma(alpha, beta)`` and
``theta | tau ~ N(u, (tau * Lambda)^{-1})``.  An observation ``x`` at context
``a`` maps ``(u, Lambda, alpha, beta)`` to

    Lambda' = Lambda + a a'
    u'      = Lambda'^{-1} (x a + Lambda u)
    alpha'  = alpha + 1/2
    beta'   = beta + (x^2 + u' Lambda u - u'' Lambda' u') / 2
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import _kernels
from .errors import (
    DimensionMismatchError,
    DomainError,
    FactorizationError,
    NumericalCorruptionError,
)
from .mathcore import check_spd
from .rng import RngStream

DEFAULT_BETA1 = 1.0


@dataclass
class NormalGammaParams:
    """Posterior state of one arm.

    ``lambda_inv`` is maintained alongside ``lam`` and ``cov_chol`` is the
    lower Cholesky factor of ``lambda_inv`` used for sampling.
    """

    u: np.ndarray
    lam: np.ndarray
    lambda_inv: np.ndarray
    alpha: float
    beta: float
    n_obs: int = 0
    cov_chol: np.ndarray | None = None

    def __post_init__(self):
        self.u = np.ascontiguousarray(self.u, dtype=float)
        self.lam = np.ascontiguousarray(self.lam, dtype=float)
        self.lambda_inv = np.ascontiguousarray(self.lambda_inv, dtype=float)
        d = self.u.shape[0]
        if self.u.ndim != 1 or self.lam.shape != (d, d) or self.lambda_inv.shape != (d, d):
            raise DimensionMismatchError("u, lam and lambda_inv must have shapes (d,), (d,d), (d,d)")
        if not (self.alpha > 0 and self.beta > 0):
            raise NumericalCorruptionError(f"alpha and beta must be positive (got {self.alpha}, {self.beta})")
        if self.cov_chol is None:
            self.cov_chol = check_spd(self.lambda_inv, "lambda_inv", atol=1e-9)

    @property
    def dim(self) -> int:
        return self.u.shape[0]

    @classmethod
    def from_prior(cls, u, lam, alpha: float, beta: float) -> "NormalGammaParams":
        lam = np.array(lam, dtype=float)
        check_spd(lam, "lam")
        lam_inv = np.empty_like(lam)
        if not _kernels.spd_inverse_into(lam, lam_inv, np.empty_like(lam)):
            raise FactorizationError("lam is not positive definite")
        return cls(u=np.array(u, dtype=float), lam=lam, lambda_inv=lam_inv, alpha=alpha, beta=beta)

    def copy(self) -> "NormalGammaParams":
        return replace(
            self,
            u=self.u.copy(),
            lam=self.lam.copy(),
            lambda_inv=self.lambda_inv.copy(),
            cov_chol=self.cov_chol.copy(),
        )


def initial_params(context, x1: float, beta1: float = DEFAULT_BETA1) -> NormalGammaParams:
    """State after the first observation: ``(x1 a, I, 1/2, beta1)``."""
    a = np.asarray(context, dtype=float)
    eye = np.eye(a.size)
    return NormalGammaParams(
        u=float(x1) * a, lam=eye, lambda_inv=eye.copy(), alpha=0.5, beta=float(beta1),
        n_obs=1, cov_chol=eye.copy(),
    )


def update(params: NormalGammaParams, context, x: float, *, update_precision: bool = True) -> NormalGammaParams:
    """Posterior after observing reward ``x`` at ``context``.

    With ``update_precision=False`` only ``u`` and ``Lambda`` move, which is
    the fixed-variance Gaussian posterior.
    """
    a = np.ascontiguousarray(context, dtype=float)
    if a.shape != (params.dim,):
        raise DimensionMismatchError(f"context has shape {a.shape}, expected ({params.dim},)")
    new = params.copy()
    new.n_obs += 1
    work = np.empty((params.dim, params.dim))
    try:
        inc = _kernels.rank_one_update(
            new.u, new.lam, new.lambda_inv, a, float(x),
            new.n_obs % _kernels.REFRESH_EVERY == 0, np.empty(params.dim), work,
        )
    except ValueError as exc:
        raise NumericalCorruptionError(str(exc)) from exc
    if update_precision:
        new.alpha = params.alpha + 0.5
        new.beta = params.beta + inc
        if not new.beta > 0.0:
            raise NumericalCorruptionError(f"beta became {new.beta}")
    if not _kernels.cholesky_into(new.lambda_inv, new.cov_chol):
        raise NumericalCorruptionError("posterior covariance lost positive definiteness")
    return new


def _unit_context(context) -> np.ndarray:
    a = np.asarray(context, dtype=float)
    if a.ndim != 1:
        raise DimensionMismatchError("context must be a vector")
    if abs(math.sqrt(float(a @ a)) - 1.0) > 1e-12:
        raise DomainError("context must have unit Euclidean norm")
    return a


def closed_form(context, observations, beta1: float = DEFAULT_BETA1) -> NormalGammaParams:
    """Posterior after ``n`` observations at a unit context, without recursion.

    Starting from ``(x1 a, I, 1/2, beta1)`` the state after ``x1..xn`` is
    ``Lambda_n = I + (n-1) a a'``, ``u_n = n mean(x) Lambda_n^{-1} a``,
    ``alpha_n = n/2`` and ``beta_n = beta1 + sum((x - mean(x))^2) / 2``.
    """
    a = _unit_context(context)
    xs = np.asarray(observations, dtype=float).ravel()
    n = xs.size
    if n == 0:
        raise DomainError("at least one observation is required")
    mean = float(np.mean(xs))
    lam = np.eye(a.size) + (n - 1) * np.outer(a, a)
    u = n * mean * np.linalg.solve(lam, a)
    beta = beta1 + 0.5 * float(np.sum((xs - mean) ** 2))
    return NormalGammaParams(u=u, lam=lam, lambda_inv=np.linalg.inv(lam), alpha=n / 2.0, beta=beta, n_obs=n)


def closed_form_stats(context, observations, beta1: float = DEFAULT_BETA1):
    """Vectorised :func:`closed_form` returning ``(a'u_n, beta_n)`` per row.

    ``observations`` has shape ``(streams, n)``; every row is one independent
    sequence at the same unit context.
    """
    a = _unit_context(context)
    xs = np.atleast_2d(np.asarray(observations, dtype=float))
    n = xs.shape[1]
    lam = np.eye(a.size) + (n - 1) * np.outer(a, a)
    gain = float(a @ np.linalg.solve(lam, a))
    means = xs.mean(axis=1)
    a_u = n * means * gain
    betas = beta1 + 0.5 * np.sum((xs - means[:, None]) ** 2, axis=1)
    return a_u, betas


def sample_qvalue(params: NormalGammaParams, context, rng: RngStream, tau_tilde: float | None = None):
    """Sample ``q = a' theta`` from the posterior.

    Draws ``tau ~ Gamma(alpha, beta)`` (unless ``tau_tilde`` is given), then
    ``theta ~ N(u, (tau Lambda)^{-1})``.  Returns ``(q, tau)``.
    """
    a = np.ascontiguousarray(context, dtype=float)
    if a.shape != (params.dim,):
        raise DimensionMismatchError(f"context has shape {a.shape}, expected ({params.dim},)")
    gen = rng.generator
    if tau_tilde is None:
        tau_tilde = _kernels.standard_gamma(gen, params.alpha) / params.beta
    elif not tau_tilde > 0:
        raise DomainError("tau_tilde must be positive")
    q = _kernels.draw_q(gen, a, params.u, params.cov_chol, float(tau_tilde), np.empty(params.dim))
    return q, float(tau_tilde)


__all__ = [
    "NormalGammaParams",
    "initial_params",
    "update",
    "closed_form",
    "closed_form_stats",
    "sample_qvalue",
    "DEFAULT_BETA1",
    "FactorizationError",
]
