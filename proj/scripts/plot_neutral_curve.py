#!/usr/bin/env python3
"""Neutral curves R(alpha^2) for the l = 1 layer, with the lattice thresholds.

Input: the CSV of `rotabouss critical --neutral lo:hi:n`. Lattice thresholds
are recomputed from the parameters in the CSV's manifest.

    rotabouss critical --config steady.json --neutral 1:40:400 --out neutral.csv
    python3 scripts/plot_neutral_curve.py neutral.csv -o neutral.png
"""

import argparse
import json
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402


def lattice_points(params, x_max, jmax=8, kmax=8):
    """(alpha^2, steady threshold) for every (j, k, 1) of the truncated lattice."""
    s, ro, a1, a2 = params["sigma"], params["ro"], params["alpha1"], params["alpha2"]
    pts = []
    for j in range(jmax + 1):
        for k in range(-kmax, kmax + 1):
            if (j, k) == (0, 0):
                continue
            x = (j * a1) ** 2 + (k * a2) ** 2
            if x <= x_max:
                r = ((x + math.pi**2) ** 3 + math.pi**2 / (s * s * ro * ro)) / x
                pts.append((x, r))
    return pts


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("csv", type=Path)
    ap.add_argument("-o", "--output", type=Path, default=Path("neutral_curve.png"))
    ap.add_argument("--no-hopf", action="store_true", help="omit the oscillatory curve")
    args = ap.parse_args()

    df = pd.read_csv(args.csv)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(df.alpha_sq, df.r_steady, label="steady")
    manifest = args.csv.with_name(args.csv.name + ".manifest.json")
    params = json.loads(manifest.read_text())["params"] if manifest.exists() else None
    if not args.no_hopf and (params is None or params["sigma"] < 1):
        ax.plot(df.alpha_sq, df.r_hopf, "--", label="oscillatory")
    if params is not None:
        pts = lattice_points(params, df.alpha_sq.max())
        ax.plot([p[0] for p in pts], [p[1] for p in pts], "k.", label="lattice (steady)")
    ax.set_xlabel(r"$\alpha^2$")
    ax.set_ylabel("R")
    ax.set_ylim(0, 3 * df.r_steady.min())
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)


if __name__ == "__main__":
    main()
