"""Plot Figure-2-style cumulative regret curves from ``ngbandit simulate`` CSV.

    ngbandit simulate --preset fig2a --replications 500 --out a.csv
    ngbandit simulate --preset fig2b --replications 500 --out b.csv
    ngbandit simulate --preset fig2c --replications 500 --out c.csv
    python3 scripts/plot_fig2.py a.csv b.csv c.csv -o fig2.png

One panel per ``(alpha_star, beta_star)``; each agent is drawn as its mean
curve with a band of two standard errors.  Needs the ``plot`` extra.
"""

import argparse
import csv
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

LABELS = {"ng_ts": "normal-gamma TS", "gauss_ts": "Gaussian TS", "random": "uniform", "oracle": "oracle"}


def load(paths):
    """``{(alpha, beta): {agent: (rounds, mean, stderr)}}`` from CSV files."""
    rows = defaultdict(lambda: defaultdict(list))
    for path in paths:
        with open(path, newline="", encoding="utf-8") as fh:
            for r in csv.DictReader(fh):
                key = (float(r["alpha_star"]), float(r["beta_star"]))
                rows[key][r["agent"]].append((int(r["round"]), float(r["mean_cum_regret"]), float(r["stderr"])))
    out = {}
    for key, agents in rows.items():
        out[key] = {a: tuple(np.array(c) for c in zip(*sorted(v))) for a, v in agents.items()}
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("csv", nargs="+")
    ap.add_argument("-o", "--output", default="fig2.png")
    args = ap.parse_args()
    data = load(args.csv)
    keys = sorted(data, key=lambda k: (k[0], k[1]))
    fig, axes = plt.subplots(1, len(keys), figsize=(4.5 * len(keys), 3.6), squeeze=False)
    for ax, key in zip(axes[0], keys):
        for agent, (rounds, mean, se) in sorted(data[key].items()):
            line, = ax.plot(rounds, mean, label=LABELS.get(agent, agent))
            se = np.nan_to_num(se)
            ax.fill_between(rounds, mean - 2 * se, mean + 2 * se, color=line.get_color(), alpha=0.2, lw=0)
        ax.set_title(rf"$\alpha^*={key[0]:g},\ \beta^*={key[1]:g}$")
        ax.set_xlabel("round")
        ax.grid(alpha=0.3)
    axes[0][0].set_ylabel("Bayesian cumulative regret")
    axes[0][0].legend()
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)
    print(f"wrote {args.output}")


if __name__ == "__main__":
    main()
