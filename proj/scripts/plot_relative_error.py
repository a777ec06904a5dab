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
"""Plots completion relative error against the sampling fraction.

Reads relative_error_summary.csv (means with the reciprocal-SNR reference
levels) and relative_error_trials.csv (per-trial scatter) from
`rmc experiment relative-error`.

Usage: plot_relative_error.py OUT_DIR [--save relative_error.png]
"""

import argparse
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd

WAVE_COLOR = {"hadamard": "tab:blue", "gaussian": "tab:red"}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out_dir", type=Path, help="experiment output directory")
    ap.add_argument("--save", type=Path, default=Path("relative_error.png"))
    args = ap.parse_args()

    summary = pd.read_csv(args.out_dir / "relative_error_summary.csv",
                          comment="#")
    trials = pd.read_csv(args.out_dir / "relative_error_trials.csv",
                         comment="#")

    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    for wave, grp in summary.groupby("waveform"):
        grp = grp.sort_values("p")
        color = WAVE_COLOR.get(wave, "gray")
        ax.semilogy(grp["p"], grp["mean_rel_error"], "o-", color=color,
                    label=f"{wave} mean")
        cloud = trials[trials["waveform"] == wave]
        ax.semilogy(cloud["p"], cloud["rel_error"], ".", color=color,
                    alpha=0.15, markersize=4)
    row = summary.iloc[0]
    if row["recip_snr_amplitude"] > 0:
        ax.axhline(row["recip_snr_amplitude"], ls="--", color="k", lw=0.8,
                   label="1/SNR (amplitude)")
        ax.axhline(row["recip_snr_power"], ls=":", color="k", lw=0.8,
                   label="1/SNR (power)")
    ax.set_xlabel("sampling fraction p")
    ax.set_ylabel("relative recovery error")
    ax.grid(alpha=0.3, which="both")
    ax.legend(fontsize=9)
    fig.tight_layout()
    fig.savefig(args.save, dpi=150)
    print(f"wrote {args.save}")


if __name__ == "__main__":
    main()
