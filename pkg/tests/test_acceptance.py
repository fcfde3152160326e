"""Acceptance criteria, each run at full scale and tolerance.

Every test records one ``CRITERION n: PASS|FAIL ...`` line, printed in the
pytest terminal summary (and to stdout with ``-s``).
"""

import math
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, unit_vector
from ngbandit import analytics
from ngbandit.cli import PRESETS
from ngbandit.environment import BayesPriorSpec
from ngbandit.mathcore import lambert_w0
from ngbandit.posterior import closed_form, initial_params, update
from ngbandit.rng import RngStream
from ngbandit.simulator import RunConfig, estimate_bayes_regret


def record(n, passed, detail, started):
    line = f"CRITERION {n}: {'PASS' if passed else 'FAIL'} ({time.perf_counter() - started:.1f}s) {detail}"
    ACCEPTANCE_LINES[n] = line
    print(line)
    return passed


def rel_err(got, want):
    got, want = np.asarray(got, float), np.asarray(want, float)
    return float(np.max(np.abs(got - want)) / max(1e-300, float(np.max(np.abs(want)))))


def preset_spec(name):
    p = PRESETS[name]
    return BayesPriorSpec(p["n_arms"], p["dim"], p["alpha_star"], p["beta_star"])


# -- 1: recurrence vs closed form -------------------------------------------


def conjugacy_worst(streams=1000, seed=0):
    gen = RngStream(seed, 1).generator
    worst = 0.0
    for _ in range(streams):
        d = int(gen.integers(1, 9))
        n = int(gen.integers(1, 201))
        a = unit_vector(gen, d)
        xs = gen.normal(gen.normal(), 1.0 / math.sqrt(gen.gamma(3.0, 0.5)), n)
        beta1 = float(gen.uniform(0.1, 3.0))
        p = initial_params(a, xs[0], beta1)
        for x in xs[1:]:
            p = update(p, a, x)
        q = closed_form(a, xs, beta1)
        worst = max(worst, rel_err(p.u, q.u), rel_err(p.lam, q.lam),
                    rel_err(p.alpha, q.alpha), rel_err(p.beta, q.beta))
    return worst


def test_criterion_1_conjugacy():
    t0 = time.perf_counter()
    worst = conjugacy_worst()
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-9 and elapsed < 30
    record(1, ok, f"max relative error {worst:.2e} (tol 1e-9) over 1000 streams", t0)
    assert ok


# -- 2: closed-form identities ----------------------------------------------


def identity_worst(seed=0, n_max=10_000, dims=(1, 2, 5, 8)):
    gen = RngStream(seed, 2).generator
    checkpoints = {1, 2, 3, 10, 100, 1000, 5000, n_max}
    worst = 0.0
    for d in dims:
        a = unit_vector(gen, d)
        xs = gen.normal(0.7, 1.3, n_max)
        p = initial_params(a, xs[0])
        total = xs[0]
        for i in range(1, n_max + 1):
            if i > 1:
                p = update(p, a, xs[i - 1])
                total += xs[i - 1]
            if i in checkpoints:
                worst = max(worst, abs(float(a @ p.u) - total / i),
                            abs(float(a @ p.lambda_inv @ a) - 1.0 / i))
    return worst


def test_criterion_2_identities():
    t0 = time.perf_counter()
    worst = identity_worst()
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-8 and elapsed < 10
    record(2, ok, f"max |a'u - mean|, |a'L^-1 a - 1/n| = {worst:.2e} (tol 1e-8) up to n=10^4", t0)
    assert ok


# -- 3, 4, 5: validation suites ---------------------------------------------


def suite_line(rep):
    failed = [c.name for c in rep.checks if not c.passed]
    return f"{len(rep.checks) - len(failed)}/{len(rep.checks)} checks pass" + (f"; failed {failed}" if failed else "")


def test_criterion_3_conditional_distributions():
    t0 = time.perf_counter()
    rep = analytics.run_suite("conddist", 100_000, 0)
    corr = max(abs(c.statistic) for c in rep.checks if "corr" in c.name)
    ok = rep.passed and corr < 0.013 and time.perf_counter() - t0 < 120
    record(3, ok, f"{suite_line(rep)}; max |corr| {corr:.4f}", t0)
    assert ok


def test_criterion_4_joint_events():
    t0 = time.perf_counter()
    rep = analytics.run_suite("joint_events", 100_000, 0)
    ok = rep.passed and time.perf_counter() - t0 < 120
    record(4, ok, suite_line(rep), t0)
    assert ok


def test_criterion_5_appendix():
    t0 = time.perf_counter()
    rep = analytics.validate_appendix()
    violations = sum(c.detail["violations"] for c in rep.checks)
    ok = rep.passed and violations == 0 and time.perf_counter() - t0 < 5
    record(5, ok, f"{suite_line(rep)}; {violations} violations", t0)
    assert ok


# -- 6: Lambert W -----------------------------------------------------------


def test_criterion_6_lambert_w():
    t0 = time.perf_counter()
    grid = np.logspace(-6, 12, 10_001)
    resid = max(abs(w * math.exp(w) - x) / max(1.0, x) for x in grid for w in [lambert_w0(x)])
    below = all(lambert_w0(x) < math.log(x) for x in grid if x > math.e)
    ok = resid <= 1e-10 and below and time.perf_counter() - t0 < 1
    record(6, ok, f"max scaled residual {resid:.2e} (tol 1e-10); W0(x) < ln x on grid: {below}", t0)
    assert ok


# -- 7: Figure 2 ordering ---------------------------------------------------


def fig2_results(replications=500, seed=0, horizon=None, workers=None):
    out = {}
    for name in ("fig2a", "fig2b", "fig2c"):
        spec = preset_spec(name)
        h = horizon or PRESETS[name]["horizon"]
        curves = {}
        for agent in ("ng_ts", "gauss_ts"):
            cfg = RunConfig(spec, h, replications, agent, seed, 10, shared_contexts=True)
            curves[agent] = estimate_bayes_regret(cfg, workers)
        out[name] = curves
    return out


def test_criterion_7_figure2_ordering():
    t0 = time.perf_counter()
    res = fig2_results()
    parts, ok = [], True
    for name, curves in res.items():
        ng, ga = curves["ng_ts"], curves["gauss_ts"]
        diff = ga.final_mean - ng.final_mean
        se = math.hypot(ng.final_stderr, ga.final_stderr)
        good = diff > 2 * se if name in ("fig2b", "fig2c") else diff > -2 * se
        ok &= good
        parts.append(f"{name} ng {ng.final_mean:.1f}±{ng.final_stderr:.1f} gauss {ga.final_mean:.1f}"
                     f"±{ga.final_stderr:.1f} ({'ok' if good else 'wrong order'})")
    record(7, ok, "; ".join(parts), t0)
    assert ok


# -- 8: Main-Lemma domination -----------------------------------------------


def test_criterion_8_main_lemma():
    t0 = time.perf_counter()
    rep = analytics.validate_main_lemma()
    worst = max(rep.checks, key=lambda c: c.statistic / c.threshold)
    ok = rep.passed and time.perf_counter() - t0 < 600
    record(8, ok, f"{suite_line(rep)}; tightest {worst.name} mean {worst.statistic:.2f} "
                  f"vs bound+3SE {worst.threshold:.1f}", t0)
    assert ok


# -- 9: theorem scale -------------------------------------------------------


def test_criterion_9_theorem_scale():
    t0 = time.perf_counter()
    ratios = analytics.theorem_scale_ratios(preset_spec("fig2a"), replications=500, seed=0)
    spread = max(ratios.values()) / min(ratios.values())
    ok = spread < 3
    shown = ", ".join(f"T={h}: {r:.3f}" for h, r in ratios.items())
    record(9, ok, f"regret/scale {shown}; max/min {spread:.2f} (< 3)", t0)
    assert ok


# -- 10: determinism --------------------------------------------------------


def test_criterion_10_determinism():
    t0 = time.perf_counter()
    same = {}
    same["1"] = conjugacy_worst(50) == conjugacy_worst(50)
    same["2"] = identity_worst(n_max=500) == identity_worst(n_max=500)

    def stats(rep):
        return [(c.name, c.passed, c.statistic) for c in rep.checks]

    same["3"] = stats(analytics.run_suite("conddist", 20_000, 3, 1)) == \
        stats(analytics.run_suite("conddist", 20_000, 3, 4))
    same["4"] = stats(analytics.run_suite("joint_events", 20_000, 3, 1)) == \
        stats(analytics.run_suite("joint_events", 20_000, 3, 4))
    same["5"] = stats(analytics.validate_appendix()) == stats(analytics.validate_appendix())
    same["6"] = [lambert_w0(x) for x in np.logspace(-6, 12, 50)] == \
        [lambert_w0(x) for x in np.logspace(-6, 12, 50)]

    def curves(workers):
        res = fig2_results(40, 1, 600, workers)
        return [(n, a, c.mean.tobytes(), c.stderr.tobytes()) for n, cs in res.items() for a, c in cs.items()]

    same["7"] = curves(1) == curves(4)

    def lemma(workers):
        return stats(analytics.validate_main_lemma(n_envs=4, episodes=30, horizon=400, workers=workers))

    same["8"] = lemma(1) == lemma(4)
    spec = preset_spec("fig2a")
    same["9"] = analytics.theorem_scale_ratios(spec, (500, 1000), 40, 2, workers=1) == \
        analytics.theorem_scale_ratios(spec, (500, 1000), 40, 2, workers=4)
    ok = all(same.values())
    bad = [k for k, v in same.items() if not v]
    record(10, ok, "reduced reruns of criteria 1-9 bit-identical with 1 and 4 workers"
           + (f"; differs: {bad}" if bad else ""), t0)
    assert ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-s", "-q"]))
