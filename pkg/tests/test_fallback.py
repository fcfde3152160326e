"""The numba kernels and their interpreted fallback must agree bit-for-bit."""

import json
import os
import subprocess
import sys

import pytest

PROBE = r"""
import json
import numpy as np
import ngbandit
from ngbandit import BayesPriorSpec, RngStream
from ngbandit.simulator import replication_environment
from ngbandit.posterior import initial_params, sample_qvalue, update
from ngbandit.simulator import RunConfig, run_episode, run_replications

out = {"backend": ngbandit.backend()}
spec = BayesPriorSpec(6, 3, 3.0, 2.0)
env = replication_environment(spec, 11, 0)
out["env"] = [float(v) for v in np.concatenate([env.mu, env.tau, env.contexts.ravel()])]
for prior in (None, spec):
    for kind in ("ng_ts", "gauss_ts", "random", "oracle"):
        tr = run_episode(env, kind, 300, RngStream(5, 1), stride=50, prior=prior)
        out[f"{kind}/{prior is not None}"] = [float(v) for v in tr.cumulative] + [int(c) for c in tr.counts]
rs = run_replications(RunConfig(spec, 200, 4, "ng_ts", seed=2, record_stride=100, shared_contexts=True))
out["reps"] = [float(v) for t in rs for v in t.cumulative]
p = initial_params(env.contexts[0], 0.3)
rng = RngStream(9, 9)
qs = []
for i in range(600):
    p = update(p, env.contexts[0], float(i % 7) / 3.0)
    qs.append(sample_qvalue(p, env.contexts[0], rng)[0])
out["posterior"] = [float(v) for v in np.concatenate([p.u, p.lam.ravel(), p.lambda_inv.ravel(), [p.beta], qs])]
print(json.dumps({k: (v if isinstance(v, str) else [repr(x) for x in v]) for k, v in out.items()}))
"""


def probe(disable: bool) -> dict:
    env = dict(os.environ)
    env.pop("NGBANDIT_DISABLE_JIT", None)
    if disable:
        env["NGBANDIT_DISABLE_JIT"] = "1"
    res = subprocess.run([sys.executable, "-c", PROBE], capture_output=True, text=True, env=env, timeout=600)
    assert res.returncode == 0, res.stderr
    return json.loads(res.stdout)


@pytest.fixture(scope="module")
def both():
    return probe(False), probe(True)


def test_backends_differ(both):
    jit, py = both
    assert py["backend"] == "python"
    pytest.importorskip("numba")
    assert jit["backend"] == "numba"


@pytest.mark.parametrize("key", [
    "env", "reps", "posterior",
    *[f"{k}/{p}" for k in ("ng_ts", "gauss_ts", "random", "oracle") for p in (False, True)],
])
def test_outputs_bit_identical(both, key):
    jit, py = both
    assert jit[key] == py[key]
