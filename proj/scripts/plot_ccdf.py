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
"""Plots the singular-vector maxima CCDF curves.

Reads ccdf_curves.csv from `rmc experiment ccdf` and draws one panel per
(metric, K): the three array/sample-size cases overlaid per waveform.

Usage: plot_ccdf.py OUT_DIR [--save ccdf.png]
"""

import argparse
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd

CASE_STYLE = {"I": "-", "II": "--", "III": ":"}
WAVE_COLOR = {"hadamard": "tab:blue", "gaussian": "tab:red"}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out_dir", type=Path, help="experiment output directory")
    ap.add_argument("--save", type=Path, default=Path("ccdf.png"))
    args = ap.parse_args()

    df = pd.read_csv(args.out_dir / "ccdf_curves.csv", comment="#")
    metrics = sorted(df["metric"].unique())
    ks = sorted(df["k"].unique())
    fig, axes = plt.subplots(
        len(metrics), len(ks), figsize=(5.5 * len(ks), 4 * len(metrics)),
        squeeze=False)
    for i, metric in enumerate(metrics):
        for j, k in enumerate(ks):
            ax = axes[i][j]
            sub = df[(df["metric"] == metric) & (df["k"] == k)]
            for (case, wave), grp in sub.groupby(["case", "waveform"]):
                ax.plot(grp["threshold"], grp["probability"],
                        CASE_STYLE.get(case, "-"),
                        color=WAVE_COLOR.get(wave, "gray"),
                        label=f"case {case}, {wave}")
            ax.set_title(f"{metric}, K = {k}")
            ax.set_xlabel("threshold t")
            ax.set_ylabel(f"P[{metric} > t]")
            ax.set_xlim(0, 1)
            ax.set_ylim(-0.02, 1.02)
            ax.grid(alpha=0.3)
            ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(args.save, dpi=150)
    print(f"wrote {args.save}")


if __name__ == "__main__":
    main()
