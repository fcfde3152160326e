"""Time the hot kernels under numba and under the interpreted fallback.

    python3 benchmarks/bench_kernels.py            # both backends, side by side
    python3 benchmarks/bench_kernels.py --single   # current backend only

The fallback is selected by ``NGBANDIT_DISABLE_JIT=1``; each backend runs in
its own process because the switch is read at import time.
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np


def timed(fn, repeat):
    fn()  # warm-up (includes JIT compilation)
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def run_single(horizon: int, repeat: int) -> dict:
    import ngbandit
    from ngbandit import _kernels
    from ngbandit.environment import BayesPriorSpec
    from ngbandit.rng import RngStream
    from ngbandit.simulator import replication_environment, run_episode

    spec = BayesPriorSpec(30, 5, 3.0, 2.0)
    env = replication_environment(spec, 0, 0)
    gen = RngStream(1, 1).generator
    out = np.empty(10_000)
    a = env.contexts[0]
    u, lam, lam_inv = np.zeros(5), np.eye(5), np.eye(5)
    w, work = np.empty(5), np.empty((5, 5))

    def updates():
        for i in range(2000):
            _kernels.rank_one_update(u, lam, lam_inv, a, 0.1 * i, False, w, work)

    results = {"backend": ngbandit.backend()}
    results["gamma x1e4"] = timed(lambda: _kernels.fill_gamma(gen, 2.5, 1.0, out), repeat)
    results["rank-one update x2000"] = timed(updates, repeat)
    for kind in ("ng_ts", "gauss_ts"):
        results[f"episode {kind} K=30 T={horizon}"] = timed(
            lambda: run_episode(env, kind, horizon, RngStream(2, 2), stride=10), repeat)
    return results


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--single", action="store_true", help="benchmark the current backend only (JSON)")
    ap.add_argument("--horizon", type=int, default=1000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if args.single:
        print(json.dumps(run_single(args.horizon, args.repeat)))
        return
    rows = {}
    for flag in ("0", "1"):
        env = dict(os.environ, NGBANDIT_DISABLE_JIT=flag)
        res = subprocess.run([sys.executable, __file__, "--single", "--horizon", str(args.horizon),
                              "--repeat", str(args.repeat)], env=env, capture_output=True, text=True, check=True)
        data = json.loads(res.stdout)
        rows[data.pop("backend")] = data
    names = list(next(iter(rows.values())))
    print(f"{'kernel':34s} {'numba [s]':>12s} {'python [s]':>12s} {'speed-up':>9s}")
    for n in names:
        jit, py = rows.get("numba", {}).get(n, float("nan")), rows["python"][n]
        print(f"{n:34s} {jit:12.5f} {py:12.5f} {py / jit:9.1f}")


if __name__ == "__main__":
    main()
