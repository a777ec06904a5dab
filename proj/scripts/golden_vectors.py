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
"""Regenerates the golden RNG vectors and wire-format fixtures.

This is an independent reimplementation of the pinned generator described
in docs/formats.md, written from the byte-level description rather than
the C++ source. The outputs under tests/golden/ freeze the wire contract;
the C++ test suite must reproduce them exactly.

Usage: python3 scripts/golden_vectors.py [out_dir]
"""

import json
import math
import struct
import sys
from pathlib import Path

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    z &= MASK64
    z ^= z >> 30
    z = (z * 0xBF58476D1CE4E5B9) & MASK64
    z ^= z >> 27
    z = (z * 0x94D049BB133111EB) & MASK64
    z ^= z >> 31
    return z


def derive(seed: int, tag: int) -> int:
    return mix64(seed ^ mix64((tag + GOLDEN) & MASK64))


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return mix64(self.state)

    def next_below(self, bound: int) -> int:
        x = self.next()
        m = x * bound
        low = m & MASK64
        if low < bound:
            threshold = (MASK64 + 1 - bound) % bound
            while low < threshold:
                x = self.next()
                m = x * bound
                low = m & MASK64
        return m >> 64

    def uniform(self) -> float:
        return (self.next() >> 11) * (2.0 ** -53)

    def gaussian_pair(self):
        u1 = self.uniform()
        u2 = self.uniform()
        r = math.sqrt(-2.0 * math.log1p(-u1))
        phi = 2.0 * math.pi * u2
        return r * math.cos(phi), r * math.sin(phi)

    def complex_gaussian(self):
        re, im = self.gaussian_pair()
        s = math.sqrt(2.0) / 2.0
        return re * s, im * s


def sample_without_replacement(seed: int, n: int, k: int):
    gen = SplitMix64(seed)
    pool = list(range(n))
    for i in range(k):
        j = i + gen.next_below(n - i)
        pool[i], pool[j] = pool[j], pool[i]
    return sorted(pool[:k])


def rng_vectors() -> dict:
    out = {}
    out["mix64"] = [
        {"input": str(x), "output": str(mix64(x))}
        for x in [0, 1, 2, GOLDEN, 0xDEADBEEF, MASK64]
    ]
    out["derive"] = [
        {"seed": str(s), "tag": str(t), "output": str(derive(s, t))}
        for s, t in [(0, 0), (1, 0), (0, 1), (42, 7), (MASK64, MASK64),
                     (0x123456789ABCDEF0, 3)]
    ]
    gen = SplitMix64(42)
    out["next_seed42"] = [str(gen.next()) for _ in range(8)]
    out["next_below"] = []
    for seed, bound in [(1, 1), (1, 2), (7, 7), (7, 128), (99, 1000),
                        (99, (1 << 63) + 5)]:
        gen = SplitMix64(seed)
        out["next_below"].append({
            "seed": str(seed),
            "bound": str(bound),
            "outputs": [str(gen.next_below(bound)) for _ in range(5)],
        })
    gen = SplitMix64(2026)
    out["uniform_seed2026"] = [gen.uniform() for _ in range(6)]
    gen = SplitMix64(11)
    pairs = [gen.gaussian_pair() for _ in range(4)]
    out["gaussian_pairs_seed11"] = [[a, b] for a, b in pairs]
    gen = SplitMix64(12)
    zs = [gen.complex_gaussian() for _ in range(4)]
    out["complex_gaussian_seed12"] = [[a, b] for a, b in zs]
    out["sample_without_replacement"] = []
    for seed, n, k in [(5, 10, 3), (5, 10, 10), (123, 128, 64),
                       (7, 1, 1), (9, 97, 13)]:
        out["sample_without_replacement"].append({
            "seed": str(seed), "n": n, "k": k,
            "values": sample_without_replacement(seed, n, k),
        })
    return out


# Fixture observation: PerAntenna mask over a 4 x 16 matrix at p = 0.25
# (4 columns per row), mask seed 7, independent rows. Entry values are
# dyadic rationals so float32 conversion is exact in any implementation.
FIXTURE = {
    "mask_seed": 7,
    "rows": 4,
    "cols": 16,
    "per_row": 4,
    "antenna_id": 2,
    "pulse_index": 3,
}


def fixture_value(row: int, col: int):
    return (row + col * 0.25, row - col * 0.125)


def fixture_cols(row: int):
    row_seed = derive(FIXTURE["mask_seed"], row)
    return sample_without_replacement(row_seed, FIXTURE["cols"],
                                      FIXTURE["per_row"])


def encode_fragment(mode: int) -> bytes:
    row = FIXTURE["antenna_id"]
    cols = fixture_cols(row)
    out = bytearray(b"RMC1")
    out += struct.pack("<B", 1)
    out += struct.pack("<H", FIXTURE["pulse_index"])
    out += struct.pack("<H", row)
    out += struct.pack("<B", mode)
    out += struct.pack("<I", len(cols))
    if mode == 1:
        out += struct.pack("<Q", derive(FIXTURE["mask_seed"], row))
        for c in cols:
            re, im = fixture_value(row, c)
            out += struct.pack("<ff", re, im)
    else:
        for c in cols:
            re, im = fixture_value(row, c)
            out += struct.pack("<Iff", c, re, im)
    return bytes(out)


def main() -> None:
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else (
        Path(__file__).resolve().parent.parent / "tests" / "golden")
    out_dir.mkdir(parents=True, exist_ok=True)

    vectors = rng_vectors()
    vectors["fragment_fixture"] = dict(
        FIXTURE, cols_by_row=[fixture_cols(r) for r in range(FIXTURE["rows"])])
    (out_dir / "rng_vectors.json").write_text(
        json.dumps(vectors, indent=1) + "\n")
    (out_dir / "fragment_mode0.bin").write_bytes(encode_fragment(0))
    (out_dir / "fragment_mode1.bin").write_bytes(encode_fragment(1))
    print(f"wrote fixtures to {out_dir}")


if __name__ == "__main__":
    main()
