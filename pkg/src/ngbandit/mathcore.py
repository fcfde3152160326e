"""Samplers and special functions.

Random draws always come from an explicit :class:`~ngbandit.rng.RngStream`;
nothing here touches global random state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from . import _kernels
from .errors import DomainError, FactorizationError, InvalidParameterError
from .rng import RngStream

__all__ = [
    "RngStream",
    "sample_gamma",
    "sample_mvnormal",
    "sample_chi_square",
    "check_spd",
    "lambert_w0",
    "gaussian_q",
    "chi_square_threshold",
    "verify_appendix_inequalities",
    "verify_gaussian_tail_bound",
    "InequalityReport",
]


def sample_gamma(shape: float, rate: float, rng: RngStream, size: int | None = None):
    """Draw from Gamma(shape, rate) (mean ``shape / rate``).

    Returns a float, or an array of ``size`` draws.
    """
    if not (shape > 0 and math.isfinite(shape)):
        raise InvalidParameterError(f"gamma shape must be positive, got {shape}")
    if not (rate > 0 and math.isfinite(rate)):
        raise InvalidParameterError(f"gamma rate must be positive, got {rate}")
    if size is None:
        return _kernels.standard_gamma(rng.generator, float(shape)) / float(rate)
    out = np.empty(int(size))
    _kernels.fill_gamma(rng.generator, float(shape), float(rate), out)
    return out


def sample_chi_square(dof: int, rng: RngStream, size: int | None = None):
    """Chi-square draws as ``2 * Gamma(dof / 2, 1)``."""
    if dof < 1:
        raise InvalidParameterError(f"degrees of freedom must be >= 1, got {dof}")
    return 2.0 * sample_gamma(dof / 2.0, 1.0, rng, size)


def check_spd(matrix, name: str = "matrix", atol: float = 1e-12) -> np.ndarray:
    """Return the lower Cholesky factor, raising if ``matrix`` is not SPD."""
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise FactorizationError(f"{name} must be square, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise FactorizationError(f"{name} has non-finite entries")
    if np.max(np.abs(m - m.T), initial=0.0) > atol:
        raise FactorizationError(f"{name} is not symmetric")
    chol = np.zeros_like(m)
    if not _kernels.cholesky_into(np.ascontiguousarray(m), chol):
        raise FactorizationError(f"{name} is not positive definite")
    return chol


def sample_mvnormal(mean, covariance, rng: RngStream, size: int | None = None):
    """Draw from N_d(mean, covariance) as ``mean + L z`` with ``L L' = covariance``."""
    mean = np.atleast_1d(np.asarray(mean, dtype=float))
    cov = np.atleast_2d(np.asarray(covariance, dtype=float))
    if cov.shape != (mean.size, mean.size):
        raise FactorizationError(
            f"covariance shape {cov.shape} does not match mean of length {mean.size}"
        )
    chol = check_spd(cov, "covariance")
    out = np.empty((1 if size is None else int(size), mean.size))
    _kernels.fill_mvnormal(rng.generator, mean, chol, out)
    return out[0] if size is None else out


def lambert_w0(x: float, tol: float = 1e-14, max_iter: int = 50) -> float:
    """Principal branch of the Lambert W function for ``x >= 0``.

    Halley iteration on ``w e^w - x`` started from ``log1p(x)``.
    """
    x = float(x)
    if not x >= 0.0:
        raise DomainError(f"lambert_w0 is only implemented for x >= 0, got {x}")
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        return math.inf
    w = math.log1p(x)
    for _ in range(max_iter):
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= step
        if abs(step) <= tol * abs(w):
            return w
    raise ArithmeticError(f"lambert_w0 did not converge for x={x}")


def gaussian_q(c):
    """Standard normal upper tail ``1 - Phi(c)``; scalar or array input."""
    out = 0.5 * special.erfc(np.asarray(c, dtype=float) / math.sqrt(2.0))
    return float(out) if out.ndim == 0 else out


def chi_square_threshold(dof: int, x: float) -> float:
    """Level ``u`` with ``P(U >= u) <= exp(-x)`` for ``U ~ chi2(dof)``."""
    if dof < 1:
        raise DomainError(f"dof must be >= 1, got {dof}")
    if not x > 0:
        raise DomainError(f"x must be positive, got {x}")
    return dof + 2.0 * math.sqrt(dof * x) + 2.0 * x


@dataclass
class InequalityReport:
    """Outcome of a pointwise inequality sweep.

    ``min_slack`` is the smallest ``lhs - rhs`` observed (negative means a
    violation) and ``max_slack`` the largest.
    """

    name: str
    n_points: int = 0
    violations: int = 0
    min_slack: float = math.inf
    max_slack: float = -math.inf
    worst_point: float = math.nan
    children: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.violations == 0 and all(c.passed for c in self.children)

    def _record(self, points, slack):
        slack = np.asarray(slack, dtype=float)
        if slack.size == 0:
            return
        self.n_points += slack.size
        self.violations += int(np.count_nonzero(~(slack >= 0.0)))
        i = int(np.argmin(slack))
        if slack[i] < self.min_slack:
            self.min_slack = float(slack[i])
            self.worst_point = float(np.asarray(points)[i])
        self.max_slack = max(self.max_slack, float(np.max(slack)))


def verify_appendix_inequalities(grid) -> InequalityReport:
    """Check ``log(1+x) >= 2x/(2+x)`` (x >= 0) and ``1/log(1/x) >= x/(1-x)`` (0 < x < 1).

    Each grid point is checked against every inequality whose domain contains
    it; a negative point is a :class:`DomainError`.
    """
    x = np.atleast_1d(np.asarray(grid, dtype=float))
    if np.any(~np.isfinite(x)) or np.any(x < 0.0):
        raise DomainError("grid points must be finite and non-negative")
    log_ineq = InequalityReport("log1p_lower")
    log_ineq._record(x, np.log1p(x) - 2.0 * x / (2.0 + x))
    inner = x[(x > 0.0) & (x < 1.0)]
    recip = InequalityReport("inverse_log_lower")
    recip._record(inner, 1.0 / -np.log(inner) - inner / (1.0 - inner))
    return InequalityReport("appendix_log_inequalities", children=[log_ineq, recip])


def verify_gaussian_tail_bound(grid) -> InequalityReport:
    """Check ``Q(c) <= exp(-c^2/2) / 2`` on a grid of ``c >= 0``."""
    c = np.atleast_1d(np.asarray(grid, dtype=float))
    if np.any(c < 0.0):
        raise DomainError("the tail bound is stated for c >= 0")
    report = InequalityReport("gaussian_tail_bound")
    report._record(c, 0.5 * np.exp(-0.5 * c * c) - gaussian_q(c))
    return report
