#!/usr/bin/env python3
"""Mode amplitude and energies against time from `rotabouss simulate` output.

    python3 scripts/plot_time_series.py sim.csv -o sim.png
"""

import argparse
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("csv", type=Path)
    ap.add_argument("-o", "--output", type=Path, default=Path("time_series.png"))
    args = ap.parse_args()

    df = pd.read_csv(args.csv)
    fig, (top, bottom) = plt.subplots(2, 1, sharex=True, figsize=(6, 5))
    top.plot(df.t, df.re_wmode, label="Re")
    top.plot(df.t, df.im_wmode, label="Im")
    top.set_ylabel("mode amplitude")
    top.legend()
    bottom.semilogy(df.t, df.ke, label="kinetic")
    bottom.semilogy(df.t, df.te, label="thermal")
    bottom.set_xlabel("t")
    bottom.set_ylabel("energy")
    bottom.legend()
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)


if __name__ == "__main__":
    main()
