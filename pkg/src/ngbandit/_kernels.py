"""Scalar numeric kernels shared by the samplers, the posterior and the simulator.

Everything here is plain Python over numpy arrays and a
``numpy.random.Generator``; :func:`ngbandit._jit.njit` compiles it with numba
unless the JIT is disabled.  Loops are written out explicitly (no BLAS calls)
so that the compiled and interpreted paths perform the same floating-point
operations in the same order and therefore agree bit-for-bit.
"""

import math

import numpy as np

from ._jit import njit

NG_TS = 0
GAUSS_TS = 1
RANDOM = 2
ORACLE = 3

# Full re-inversion of the precision matrix every this many observations.
REFRESH_EVERY = 512


@njit(cache=True, nogil=True)
def standard_gamma(gen, shape):
    """One Gamma(shape, 1) variate (Marsaglia-Tsang squeeze, boosted below 1)."""
    boost = 1.0
    a = shape
    if shape < 1.0:
        a = shape + 1.0
        boost = (1.0 - gen.random()) ** (1.0 / shape)
    d = a - 1.0 / 3.0
    c = 1.0 / math.sqrt(9.0 * d)
    while True:
        x = gen.standard_normal()
        v = 1.0 + c * x
        if v <= 0.0:
            continue
        v = v * v * v
        u = 1.0 - gen.random()
        x2 = x * x
        if u < 1.0 - 0.0331 * x2 * x2:
            return d * v * boost
        if math.log(u) < 0.5 * x2 + d * (1.0 - v + math.log(v)):
            return d * v * boost


@njit(cache=True, nogil=True)
def fill_gamma(gen, shape, rate, out):
    for i in range(out.shape[0]):
        out[i] = standard_gamma(gen, shape) / rate


@njit(cache=True, nogil=True)
def cholesky_into(a, out):
    """Lower Cholesky factor of ``a`` into ``out``; False on a non-positive pivot."""
    n = a.shape[0]
    for j in range(n):
        s = a[j, j]
        for k in range(j):
            s -= out[j, k] * out[j, k]
        if not s > 0.0:
            return False
        ljj = math.sqrt(s)
        out[j, j] = ljj
        for i in range(j + 1, n):
            s = a[i, j]
            for k in range(j):
                s -= out[i, k] * out[j, k]
            out[i, j] = s / ljj
        for i in range(j):
            out[i, j] = 0.0
    return True


@njit(cache=True, nogil=True)
def spd_inverse_into(a, out, work):
    """Inverse of an SPD matrix through its Cholesky factor (``work`` is scratch)."""
    n = a.shape[0]
    if not cholesky_into(a, work):
        return False
    # out <- L^{-1}, lower triangular, by forward substitution on the identity
    for c in range(n):
        for i in range(n):
            s = 1.0 if i == c else 0.0
            for k in range(i):
                s -= work[i, k] * out[k, c]
            out[i, c] = s / work[i, i] if i >= c else 0.0
    # A^{-1} = L^{-T} L^{-1}; fill the lower triangle then mirror it
    for i in range(n):
        for j in range(i + 1):
            s = 0.0
            for k in range(i, n):
                s += out[k, i] * out[k, j]
            work[i, j] = s
    for i in range(n):
        for j in range(i + 1):
            out[i, j] = work[i, j]
            out[j, i] = work[i, j]
    return True


@njit(cache=True, nogil=True)
def fill_mvnormal(gen, mean, chol, out):
    """Rows of ``out`` become draws of ``mean + chol @ z`` with z standard normal."""
    d = mean.shape[0]
    z = np.empty(d)
    for r in range(out.shape[0]):
        for i in range(d):
            z[i] = gen.standard_normal()
        for i in range(d):
            s = 0.0
            for j in range(i + 1):
                s += chol[i, j] * z[j]
            out[r, i] = mean[i] + s


@njit(cache=True, nogil=True)
def fill_prior_arms(gen, alpha, rate, floor, theta_star, cov_chol, tau, theta):
    """Per arm: tau ~ Gamma(alpha, rate) (redrawn below ``floor``), then
    theta = theta_star + cov_chol z / sqrt(tau)."""
    n_arms, d = theta.shape
    z = np.empty(d)
    for k in range(n_arms):
        t = 0.0
        while not t >= floor:
            t = standard_gamma(gen, alpha) / rate
        tau[k] = t
        scale = 1.0 / math.sqrt(t)
        for i in range(d):
            z[i] = gen.standard_normal()
        for i in range(d):
            s = 0.0
            for j in range(i + 1):
                s += cov_chol[k, i, j] * z[j]
            theta[k, i] = theta_star[k, i] + scale * s


@njit(cache=True, nogil=True)
def rank_one_update(u, lam, lam_inv, a, x, refactor, w, work):
    """In-place posterior update of (u, lam, lam_inv) by observation x at context a.

    Returns the beta increment ``(x - a.u)^2 / (2 (1 + a' lam^{-1} a))``, which
    equals ``(x^2 + u'lam u - u_new' lam_new u_new) / 2``.  ``lam_inv`` follows
    the Sherman-Morrison identity unless ``refactor`` asks for a full inverse.
    """
    d = a.shape[0]
    for i in range(d):
        s = 0.0
        for j in range(d):
            s += lam_inv[i, j] * a[j]
        w[i] = s
    denom = 1.0
    pred = 0.0
    for i in range(d):
        denom += a[i] * w[i]
        pred += a[i] * u[i]
    resid = x - pred
    for i in range(d):
        for j in range(d):
            lam[i, j] += a[i] * a[j]
    if refactor:
        if not spd_inverse_into(lam, lam_inv, work):
            raise ValueError("precision matrix lost positive definiteness")
    else:
        for i in range(d):
            for j in range(d):
                lam_inv[i, j] -= w[i] * w[j] / denom
    gain = resid / denom
    for i in range(d):
        u[i] += w[i] * gain
    return 0.5 * resid * resid / denom


@njit(cache=True, nogil=True)
def draw_q(gen, a, u, chol, tau_tilde, z):
    """a' theta with theta ~ N(u, (tau_tilde * Lambda)^{-1}), chol = chol(Lambda^{-1})."""
    d = a.shape[0]
    for i in range(d):
        z[i] = gen.standard_normal()
    scale = 1.0 / math.sqrt(tau_tilde)
    q = 0.0
    for i in range(d):
        s = 0.0
        for j in range(i + 1):
            s += chol[i, j] * z[j]
        q += a[i] * (u[i] + scale * s)
    return q


@njit(cache=True, nogil=True)
def argmax_first(q):
    best = 0
    for k in range(1, q.shape[0]):
        if q[k] > q[best]:
            best = k
    return best


@njit(cache=True, nogil=True)
def uniform_index(gen, n):
    k = int(gen.random() * n)
    return k if k < n else n - 1


@njit(cache=True, nogil=True)
def episode(kind, contexts, mu, tau, delta, optimal, horizon, stride,
            fixed_precision, beta1, gen, trace, counts,
            first_pull, prior_u, prior_lam, prior_alpha, prior_beta):
    """One bandit episode; fills ``trace`` (cumulative regret snapshots) and ``counts``.

    Rounds 1..K pull each arm once.  With ``first_pull`` that reward seeds the
    arm's posterior as (x a, I, 1/2, beta1); otherwise every arm starts from
    NG(prior_u[k], prior_lam[k], prior_alpha, prior_beta) and every reward is an
    ordinary update.  Afterwards the policy ``kind`` picks arms.  Regret
    accrues the true gap of the pulled arm.
    """
    n_arms, d = contexts.shape
    u = np.zeros((n_arms, d))
    lam = np.zeros((n_arms, d, d))
    lam_inv = np.zeros((n_arms, d, d))
    chol = np.zeros((n_arms, d, d))
    alpha = np.zeros(n_arms)
    beta = np.zeros(n_arms)
    q = np.empty(n_arms)
    z = np.empty(d)
    w = np.empty(d)
    work = np.empty((d, d))
    for k in range(n_arms):
        counts[k] = 0
        if not first_pull:
            for i in range(d):
                u[k, i] = prior_u[k, i]
                for j in range(d):
                    lam[k, i, j] = prior_lam[k, i, j]
            if not spd_inverse_into(lam[k], lam_inv[k], work):
                raise ValueError("prior precision is not positive definite")
            if not cholesky_into(lam_inv[k], chol[k]):
                raise ValueError("prior covariance is not positive definite")
            alpha[k] = prior_alpha
            beta[k] = prior_beta
    cum = 0.0
    snap = 0
    for t in range(horizon):
        if t < n_arms:
            k = t
        elif kind == RANDOM:
            k = uniform_index(gen, n_arms)
        elif kind == ORACLE:
            k = optimal
        else:
            for j in range(n_arms):
                if kind == NG_TS:
                    tt = standard_gamma(gen, alpha[j]) / beta[j]
                else:
                    tt = fixed_precision
                q[j] = draw_q(gen, contexts[j], u[j], chol[j], tt, z)
            k = argmax_first(q)
        x = mu[k] + gen.standard_normal() / math.sqrt(tau[k])
        counts[k] += 1
        if kind == NG_TS or kind == GAUSS_TS:
            a = contexts[k]
            if first_pull and counts[k] == 1:
                for i in range(d):
                    u[k, i] = x * a[i]
                    for j in range(d):
                        v = 1.0 if i == j else 0.0
                        lam[k, i, j] = v
                        lam_inv[k, i, j] = v
                        chol[k, i, j] = v
                alpha[k] = 0.5
                beta[k] = beta1
            else:
                inc = rank_one_update(u[k], lam[k], lam_inv[k], a, x,
                                      counts[k] % REFRESH_EVERY == 0, w, work)
                if kind == NG_TS:
                    alpha[k] += 0.5
                    beta[k] += inc
                if not cholesky_into(lam_inv[k], chol[k]):
                    raise ValueError("posterior covariance lost positive definiteness")
        cum += delta[k]
        if (t + 1) % stride == 0 or t + 1 == horizon:
            trace[snap] = cum
            snap += 1
