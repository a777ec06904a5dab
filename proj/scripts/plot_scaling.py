#!/usr/bin/env python3
# Copyright 2026 rmc authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Plots the singular-vector bound scaling law.

Reads scaling_points.csv and scaling_fit.csv from `rmc experiment scaling`
and overlays the 0.99-quantile points with the fitted sqrt(mu_B / n)
curves, one panel per sweep (m1 over M_r, m2 over L).

Usage: plot_scaling.py OUT_DIR [--save scaling.png]
"""

import argparse
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

SWEEP_AXIS = {"m1": "M_r (receive antennas)", "m2": "L (samples per pulse)"}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out_dir", type=Path, help="experiment output directory")
    ap.add_argument("--save", type=Path, default=Path("scaling.png"))
    args = ap.parse_args()

    points = pd.read_csv(args.out_dir / "scaling_points.csv", comment="#")
    fits = pd.read_csv(args.out_dir / "scaling_fit.csv", comment="#")

    sweeps = sorted(points["sweep"].unique())
    fig, axes = plt.subplots(1, len(sweeps), figsize=(5.5 * len(sweeps), 4),
                             squeeze=False)
    for j, sweep in enumerate(sweeps):
        ax = axes[0][j]
        pts = points[points["sweep"] == sweep].sort_values("n")
        fit = fits[fits["sweep"] == sweep].iloc[0]
        n = np.geomspace(pts["n"].min() * 0.8, pts["n"].max() * 1.2, 200)
        ax.loglog(pts["n"], pts["m_bound"], "o", label="0.99 quantile")
        ax.loglog(n, np.sqrt(fit["mu_b"] / n), "-",
                  label=f"sqrt({fit['mu_b']:.2f} / n), rms {fit['residual']:.3g}")
        ax.set_title(f"{sweep} bound vs dimension")
        ax.set_xlabel(SWEEP_AXIS.get(sweep, "n"))
        ax.set_ylabel(f"{sweep} (0.99 quantile)")
        ax.grid(alpha=0.3, which="both")
        ax.legend(fontsize=9)
    fig.tight_layout()
    fig.savefig(args.save, dpi=150)
    print(f"wrote {args.save}")


if __name__ == "__main__":
    main()
