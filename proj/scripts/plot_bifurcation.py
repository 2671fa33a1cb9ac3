#!/usr/bin/env python3
"""Bifurcation diagram: predicted amplitude against R, with simulated points.

    rotabouss reduce --config steady.json --r-scan 600:760:81 --out reduce.csv
    rotabouss simulate --config steady.json --r 690.9 --t-end 200 --out sim_a.csv
    python3 scripts/plot_bifurcation.py reduce.csv sim_a.csv -o bifurcation.png

Each simulation contributes its final |mode amplitude| at the Rayleigh number
recorded in its manifest.
"""

import argparse
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("reduce_csv", type=Path)
    ap.add_argument("simulations", type=Path, nargs="*")
    ap.add_argument("-o", "--output", type=Path, default=Path("bifurcation.png"))
    args = ap.parse_args()

    red = pd.read_csv(args.reduce_csv)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(red.R, red.radius_pred, label="amplitude model")
    ax.plot(red.R, -red.radius_pred, color=ax.lines[-1].get_color())
    for path in args.simulations:
        sim = pd.read_csv(path)
        manifest = json.loads(path.with_name(path.name + ".manifest.json").read_text())
        amp = np.hypot(sim.re_wmode.iloc[-1], sim.im_wmode.iloc[-1])
        ax.plot([manifest["params"]["rayleigh"]] * 2, [amp, -amp], "ko")
    ax.axhline(0.0, color="grey", lw=0.8)
    ax.set_xlabel("R")
    ax.set_ylabel("amplitude")
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)


if __name__ == "__main__":
    main()
