#!/usr/bin/env python3
"""Excursion study for the s=1 Shepard operator at a well-approximable x0.

With x0 extremely close to rationals (truncated sum of 10^-j!), the n-th
value swings arbitrarily close to both one-sided limits along
zero-density subsequences, while the index of convergence at the midpoint
stays near 1.  Writes the full value trace and prints the excursion
statistics.

    python scripts/s1_excursions.py --n-max 100000
"""

import argparse
import csv
from pathlib import Path

import numpy as np

from jumpspectra.density import SequencePrefix, empirical_index
from jumpspectra.piecewise import pure_step
from jumpspectra.shepard import step_sweep

LIOUVILLE_X0 = 0.110001  # sum of 10^-j! truncated after three terms


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--x0", type=float, default=LIOUVILLE_X0)
    ap.add_argument("--d", type=float, default=0.3)
    ap.add_argument("--n-max", type=int, default=100_000)
    ap.add_argument("--out-dir", default="out")
    args = ap.parse_args()

    h = pure_step(args.x0, args.d, "left1_right0", (0.0, 1.0))
    ns = np.arange(1, args.n_max + 1)
    values = step_sweep(h, 1.0, ns)

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"s1_excursions_n{args.n_max}.csv"
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "value"])
        writer.writerows(zip(ns.tolist(), values.tolist()))

    prefix = SequencePrefix(values)
    index_half = empirical_index(prefix, 0.5, eps_grid=(0.5, 0.45)).estimate
    hi, lo = int(np.argmax(values)) + 1, int(np.argmin(values)) + 1
    print(f"n_max={args.n_max}  x0={args.x0}")
    print(f"max value {values.max():.6f} at n={hi}")
    print(f"min value {values.min():.6f} at n={lo}")
    print(f"fraction above 0.9: {np.mean(values > 0.9):.4f}")
    print(f"fraction below 0.1: {np.mean(values < 0.1):.4f}")
    print(f"index of convergence at 1/2 (coarse grid): {index_half:.4f}")
    print(f"trace written to {path}")


if __name__ == "__main__":
    main()
