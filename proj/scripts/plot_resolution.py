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
"""Plots DOA resolution probability against angular separation.

Reads resolution_summary.csv from `rmc experiment resolution`: one curve
per (waveform, sampling fraction).

Usage: plot_resolution.py OUT_DIR [--save resolution.png]
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
    ap.add_argument("--save", type=Path, default=Path("resolution.png"))
    args = ap.parse_args()

    df = pd.read_csv(args.out_dir / "resolution_summary.csv", comment="#")
    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    for (wave, p), grp in df.groupby(["waveform", "p"]):
        grp = grp.sort_values("d_theta")
        ax.plot(grp["d_theta"], grp["probability"], "o-",
                color=WAVE_COLOR.get(wave, "gray"),
                alpha=1.0 if p >= 0.5 else 0.55,
                label=f"{wave}, p = {p}")
    ax.set_xlabel("angular separation d_theta (deg)")
    ax.set_ylabel("resolution probability")
    ax.set_ylim(-0.02, 1.05)
    ax.grid(alpha=0.3)
    ax.legend(fontsize=9)
    fig.tight_layout()
    fig.savefig(args.save, dpi=150)
    print(f"wrote {args.save}")


if __name__ == "__main__":
    main()
