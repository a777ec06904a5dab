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
"""Plots a MUSIC pseudospectrum produced by `rmc estimate`.

Reads spectrum.csv and peaks.csv; with a single speed on the grid the plot
is a 1-D angle spectrum, otherwise a heat map over (angle, speed) with the
detected peaks marked.

Usage: plot_spectrum.py OUT_DIR [--save spectrum.png]
"""

import argparse
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out_dir", type=Path, help="estimate output directory")
    ap.add_argument("--save", type=Path, default=Path("spectrum.png"))
    args = ap.parse_args()

    spectrum = pd.read_csv(args.out_dir / "spectrum.csv", comment="#")
    peaks = pd.read_csv(args.out_dir / "peaks.csv", comment="#")
    speeds = sorted(spectrum["speed"].unique())

    fig, ax = plt.subplots(figsize=(7, 4.5))
    if len(speeds) == 1:
        sub = spectrum.sort_values("angle")
        ax.semilogy(sub["angle"], sub["value"], "-")
        for _, pk in peaks.iterrows():
            ax.axvline(pk["angle"], color="tab:red", ls="--", lw=0.8)
        ax.set_ylabel("pseudospectrum")
    else:
        grid = spectrum.pivot(index="speed", columns="angle", values="value")
        mesh = ax.pcolormesh(grid.columns, grid.index, grid.values,
                             shading="nearest", cmap="viridis")
        fig.colorbar(mesh, ax=ax, label="pseudospectrum")
        ax.plot(peaks["angle"], peaks["speed"], "r+", markersize=12,
                markeredgewidth=2)
        ax.set_ylabel("speed (m/s)")
    ax.set_xlabel("angle (deg)")
    ax.grid(alpha=0.2)
    fig.tight_layout()
    fig.savefig(args.save, dpi=150)
    print(f"wrote {args.save}")


if __name__ == "__main__":
    main()
