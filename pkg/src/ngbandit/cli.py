"""Command-line entry point: ``ngbandit simulate | bounds | validate``.

Exit codes: 0 success, 2 configuration or validation failure, 3 I/O error.
"""

from __future__ import annotations

import argparse
import io
import sys
from dataclasses import dataclass, field

from . import analytics
from .agents import AGENT_KINDS
from .environment import BayesPriorSpec
from .errors import ConfigurationError
from .simulator import PRIOR_MODES, RunConfig, estimate_bayes_regret, replication_environment

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3

CSV_HEADER = "round,agent,alpha_star,beta_star,replications,mean_cum_regret,stderr"

_FIG2 = dict(n_arms=30, dim=5, horizon=5000, shared_contexts=True, replications=10_000,
             agents="ng_ts,gauss_ts")
PRESETS = {
    "fig2a": dict(_FIG2, alpha_star=3.0, beta_star=2.0),
    "fig2b": dict(_FIG2, alpha_star=3.0, beta_star=1.0),
    "fig2c": dict(_FIG2, alpha_star=3.0, beta_star=3.0),
}

# key -> parser; the flat config schema
_SCHEMA = {
    "n_arms": int,
    "dim": int,
    "alpha_star": float,
    "beta_star": float,
    "horizon": int,
    "replications": int,
    "seed": int,
    "stride": int,
    "agents": str,
    "shared_contexts": lambda s: _parse_bool(s),
    "fixed_precision": float,
    "beta1": float,
    "prior": str,
    "out": str,
    "preset": str,
}
_DEFAULTS = dict(n_arms=30, dim=5, alpha_star=3.0, beta_star=2.0, horizon=5000, replications=100,
                 seed=0, stride=10, agents="ng_ts,gauss_ts", shared_contexts=False,
                 fixed_precision=1.0, beta1=1.0, prior="first_pull", out="-")


def _parse_bool(s: str) -> bool:
    v = s.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ConfigurationError(f"not a boolean: {s!r}")


@dataclass
class ExperimentConfig:
    spec: BayesPriorSpec
    horizon: int
    replications: int
    agents: list
    seed: int = 0
    stride: int = 10
    shared_contexts: bool = False
    fixed_precision: float = 1.0
    beta1: float = 1.0
    prior: str = "first_pull"
    out: str = "-"
    preset: str | None = None
    runs: list = field(default_factory=list)

    def run_config(self, agent: str) -> RunConfig:
        return RunConfig(self.spec, self.horizon, self.replications, agent, self.seed, self.stride,
                         self.shared_contexts, self.fixed_precision, self.beta1, self.prior)


def read_config_file(path: str) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc}") from exc
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _SCHEMA:
            raise ConfigurationError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = value
    return out


def build_config(file_values: dict, overrides: dict) -> ExperimentConfig:
    """Defaults, then preset, then config file, then command-line overrides."""
    raw = {k: v for k, v in file_values.items()}
    raw.update({k: v for k, v in overrides.items() if v is not None})
    preset = raw.get("preset")
    values = dict(_DEFAULTS)
    if preset is not None:
        if preset not in PRESETS:
            raise ConfigurationError(f"unknown preset {preset!r}; expected one of {sorted(PRESETS)}")
        values.update(PRESETS[preset])
    for key, v in raw.items():
        try:
            values[key] = _SCHEMA[key](v) if isinstance(v, str) else v
        except ValueError as exc:
            raise ConfigurationError(f"bad value for {key}: {v!r}") from exc
    agents = [a.strip() for a in str(values["agents"]).split(",") if a.strip()]
    if not agents:
        raise ConfigurationError("at least one agent is required")
    for a in agents:
        if a not in AGENT_KINDS:
            raise ConfigurationError(f"unknown agent {a!r}; expected one of {sorted(AGENT_KINDS)}")
    if len(set(agents)) != len(agents):
        raise ConfigurationError("agents must be distinct")
    if values["replications"] < 1:
        raise ConfigurationError("replications must be >= 1")
    if values["prior"] not in PRIOR_MODES:
        raise ConfigurationError(f"unknown prior {values['prior']!r}; expected one of {PRIOR_MODES}")
    if values["stride"] < 1:
        raise ConfigurationError("stride must be >= 1")
    try:
        spec = BayesPriorSpec(values["n_arms"], values["dim"], values["alpha_star"], values["beta_star"])
    except ValueError as exc:
        raise ConfigurationError(str(exc)) from exc
    cfg = ExperimentConfig(spec, values["horizon"], values["replications"], agents, values["seed"],
                           values["stride"], values["shared_contexts"], values["fixed_precision"],
                           values["beta1"], values["prior"], values["out"], preset)
    cfg.runs = [cfg.run_config(a) for a in agents]
    return cfg


def format_csv(cfg: ExperimentConfig, curves) -> str:
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    a, b = cfg.spec.alpha_star, cfg.spec.beta_star
    for curve in curves:
        for i, r in enumerate(curve.rounds):
            se = "nan" if curve.replications == 1 else repr(float(curve.stderr[i]))
            buf.write(f"{int(r)},{curve.agent},{float(a)!r},{float(b)!r},{curve.replications},"
                      f"{float(curve.mean[i])!r},{se}\n")
    return buf.getvalue()


def _emit(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def run_simulate(args) -> int:
    file_values = read_config_file(args.config) if args.config else {}
    overrides = dict(preset=args.preset, seed=args.seed, replications=args.replications,
                     horizon=args.horizon, agents=args.agents, out=args.out, stride=args.stride, prior=args.prior)
    cfg = build_config(file_values, overrides)
    cfg.spec.warn_if_outside_theory()
    curves = [estimate_bayes_regret(rc, args.threads) for rc in cfg.runs]
    text = format_csv(cfg, curves)
    try:
        _emit(text, cfg.out)
    except OSError as exc:
        print(f"error: cannot write {cfg.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _float_list(s: str) -> list[float]:
    try:
        return [float(v) for v in s.split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigurationError(f"expected a comma-separated list of numbers, got {s!r}") from exc


def run_bounds(args) -> int:
    if args.delta is not None or args.tau is not None:
        if args.delta is None or args.tau is None:
            raise ConfigurationError("--delta and --tau must be given together")
        delta, tau = _float_list(args.delta), _float_list(args.tau)
    elif args.env_seed is not None:
        if args.preset is not None and args.preset not in PRESETS:
            raise ConfigurationError(f"unknown preset {args.preset!r}")
        p = PRESETS.get(args.preset, _DEFAULTS)
        spec = BayesPriorSpec(p["n_arms"], p["dim"], p["alpha_star"], p["beta_star"])
        env = replication_environment(spec, args.env_seed, 0)
        delta, tau = list(env.delta), list(env.tau)
    else:
        raise ConfigurationError("give either --delta/--tau or --env-seed")
    theorem = None
    if args.epsilon is not None or args.alpha_star is not None:
        if args.epsilon is None or args.alpha_star is None:
            raise ConfigurationError("--epsilon and --alpha-star must be given together")
        k = args.arms if args.arms is not None else len(delta)
        theorem = analytics.TheoremScaleInput(k, args.horizon, args.epsilon, args.alpha_star)
    report = analytics.env_bound_report(delta, tau, args.horizon, theorem)
    sys.stdout.write("\n".join(report.lines()) + "\n")
    if args.out:
        rows = ["arm,delta,M,zeta,eps,rho,main_lemma_bound,countrho_bound"]
        for k in range(report.n_arms):
            rows.append(",".join([str(k)] + [repr(float(getattr(report, c)[k])) for c in
                                              ("delta", "M", "zeta", "eps", "rho",
                                               "main_lemma_bound", "countrho_bound")]))
        try:
            _emit("\n".join(rows) + "\n", args.out)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK


def run_validate(args) -> int:
    if args.suite not in analytics.SUITES:
        raise ConfigurationError(f"unknown suite {args.suite!r}; expected one of {analytics.SUITES}")
    if args.mc < 10_000:
        raise ConfigurationError("--mc must be >= 10000")
    report = analytics.run_suite(args.suite, args.mc, args.seed, args.threads)
    sys.stdout.write("\n".join(report.lines()) + "\n")
    return EXIT_OK if report.passed else EXIT_CONFIG


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigurationError(message)


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ngbandit", description="Thompson sampling on normal-gamma linear bandits.")
    parser.add_argument("--threads", type=int, default=None,
                        help="worker threads (default: NGBANDIT_THREADS or CPU count)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sim = sub.add_parser("simulate", help="estimate Bayesian regret curves and write CSV")
    sim.add_argument("--config")
    sim.add_argument("--preset")
    sim.add_argument("--seed", type=int)
    sim.add_argument("--replications", type=int)
    sim.add_argument("--horizon", type=int)
    sim.add_argument("--agents")
    sim.add_argument("--out")
    sim.add_argument("--stride", type=int)
    sim.add_argument("--prior", help="first_pull (default) or matched")
    sim.set_defaults(func=run_simulate)

    bnd = sub.add_parser("bounds", help="evaluate the analysis bounds for one environment")
    bnd.add_argument("--delta", help="comma-separated gaps, 0 for the optimal arm")
    bnd.add_argument("--tau", help="comma-separated precisions")
    bnd.add_argument("--env-seed", type=int, help="sample the environment instead")
    bnd.add_argument("--preset", help="prior used with --env-seed")
    bnd.add_argument("--horizon", type=int, default=1000)
    bnd.add_argument("--epsilon", type=float)
    bnd.add_argument("--alpha-star", type=float)
    bnd.add_argument("--arms", type=int, help="K for the theorem scale (default: number of gaps)")
    bnd.add_argument("--out", help="optional per-arm CSV")
    bnd.set_defaults(func=run_bounds)

    val = sub.add_parser("validate", help="run Monte-Carlo and grid validation suites")
    val.add_argument("suite")
    val.add_argument("--mc", type=int, default=100_000)
    val.add_argument("--seed", type=int, default=0)
    val.set_defaults(func=run_validate)
    return parser


def main(argv=None) -> int:
    try:
        args = make_parser().parse_args(argv)
        return args.func(args)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
