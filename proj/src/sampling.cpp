// Copyright 2026 rmc authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rmc/sampling.hpp"

#include <cmath>
#include <string>

#include "rmc/bytes.hpp"
#include "rmc/rng.hpp"

namespace rmc {
namespace {

constexpr char kMagic[4] = {'R', 'M', 'C', '1'};
constexpr std::uint8_t kVersion = 1;

std::size_t count_rows(const std::vector<std::vector<std::uint32_t>>& rows) {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.size();
  return n;
}

}  // namespace

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::kPerAntenna:
      return "per-antenna";
    case Scheme::kGlobalUniform:
      return "global-uniform";
  }
  throw DomainError("scheme: unknown enumerator");
}

Scheme scheme_from_name(std::string_view name) {
  if (name == "per-antenna") return Scheme::kPerAntenna;
  if (name == "global-uniform") return Scheme::kGlobalUniform;
  throw ConfigError(
      "scheme: expected 'per-antenna' or 'global-uniform', got '" +
      std::string(name) + "'");
}

std::size_t Mask::count() const { return count_rows(cols_by_row); }

double Mask::fraction() const {
  return static_cast<double>(count()) / (static_cast<double>(rows) * cols);
}

Mask make_mask(int rows, int cols, double p, Scheme scheme,
               std::uint64_t seed, bool shared_instants) {
  if (rows < 1 || cols < 1) {
    throw DomainError("make_mask: shape must be positive");
  }
  if (!(p > 0.0) || p > 1.0) {
    throw DomainError("make_mask: fraction must lie in (0, 1]");
  }
  if (shared_instants && scheme != Scheme::kPerAntenna) {
    throw DomainError("make_mask: shared instants require PerAntenna");
  }
  Mask mask;
  mask.rows = rows;
  mask.cols = cols;
  mask.scheme = scheme;
  mask.seed = seed;
  mask.shared_instants = shared_instants;
  mask.cols_by_row.resize(static_cast<std::size_t>(rows));
  if (scheme == Scheme::kPerAntenna) {
    const auto per_row = static_cast<std::uint32_t>(
        std::ceil(p * static_cast<double>(cols)));
    for (int r = 0; r < rows; ++r) {
      const std::uint64_t row_seed =
          rng::derive(seed, shared_instants ? 0u : static_cast<std::uint64_t>(r));
      mask.cols_by_row[static_cast<std::size_t>(r)] =
          rng::sample_without_replacement(
              row_seed, static_cast<std::uint32_t>(cols), per_row);
    }
    return mask;
  }
  const auto grid = static_cast<std::uint64_t>(rows) * cols;
  const auto total = static_cast<std::uint32_t>(
      std::ceil(p * static_cast<double>(grid)));
  const auto flat = rng::sample_without_replacement(
      seed, static_cast<std::uint32_t>(grid), total);
  for (std::uint32_t idx : flat) {
    mask.cols_by_row[idx / static_cast<std::uint32_t>(cols)].push_back(
        idx % static_cast<std::uint32_t>(cols));
  }
  return mask;
}

std::size_t ObservationSet::count() const { return count_rows(cols_by_row); }

double ObservationSet::fraction() const {
  return static_cast<double>(count()) / (static_cast<double>(rows) * cols);
}

Eigen::MatrixXcd ObservationSet::zero_filled() const {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const auto& cs = cols_by_row[static_cast<std::size_t>(r)];
    const auto& vs = values_by_row[static_cast<std::size_t>(r)];
    for (std::size_t i = 0; i < cs.size(); ++i) {
      out(r, static_cast<Eigen::Index>(cs[i])) = vs[i];
    }
  }
  return out;
}

ObservationSet observe(const Eigen::MatrixXcd& x, const Mask& mask) {
  if (x.rows() != mask.rows || x.cols() != mask.cols) {
    throw DomainError("observe: mask shape does not match matrix");
  }
  ObservationSet obs;
  obs.rows = mask.rows;
  obs.cols = mask.cols;
  obs.scheme = mask.scheme;
  obs.seed = mask.seed;
  obs.shared_instants = mask.shared_instants;
  obs.cols_by_row = mask.cols_by_row;
  obs.values_by_row.resize(static_cast<std::size_t>(mask.rows));
  for (int r = 0; r < mask.rows; ++r) {
    const auto& cs = mask.cols_by_row[static_cast<std::size_t>(r)];
    auto& vs = obs.values_by_row[static_cast<std::size_t>(r)];
    vs.reserve(cs.size());
    for (std::uint32_t c : cs) {
      vs.push_back(x(r, static_cast<Eigen::Index>(c)));
    }
  }
  return obs;
}

ObservationSet observe(const Pulse& x, const Mask& mask) {
  return observe(x.entries, mask);
}

std::vector<std::uint8_t> encode_forwarded(const ObservationSet& obs,
                                           int antenna_id,
                                           std::uint16_t pulse_index,
                                           FragmentMode mode) {
  if (antenna_id < 0 || antenna_id >= obs.rows) {
    throw DomainError("encode_forwarded: antenna id out of range");
  }
  const auto& cs = obs.cols_by_row[static_cast<std::size_t>(antenna_id)];
  const auto& vs = obs.values_by_row[static_cast<std::size_t>(antenna_id)];
  std::uint64_t row_seed = 0;
  if (mode == FragmentMode::kSeed) {
    if (obs.scheme != Scheme::kPerAntenna || obs.shared_instants) {
      throw DomainError(
          "encode_forwarded: seed mode requires independent PerAntenna rows");
    }
    row_seed =
        rng::derive(obs.seed, static_cast<std::uint64_t>(antenna_id));
    // Defensive: a merged or hand-built set may not match its stamp.
    const auto regen = rng::sample_without_replacement(
        row_seed, static_cast<std::uint32_t>(obs.cols),
        static_cast<std::uint32_t>(cs.size()));
    if (regen != cs) {
      throw DomainError(
          "encode_forwarded: row indices are not reproducible from the seed");
    }
  }
  std::vector<std::uint8_t> out;
  out.reserve(14 + (mode == FragmentMode::kSeed ? 8 : 0) +
              cs.size() * (mode == FragmentMode::kSeed ? 8 : 12));
  out.insert(out.end(), kMagic, kMagic + 4);
  bytes::append<std::uint8_t>(out, kVersion);
  bytes::append<std::uint16_t>(out, pulse_index);
  bytes::append<std::uint16_t>(out, static_cast<std::uint16_t>(antenna_id));
  bytes::append<std::uint8_t>(out, static_cast<std::uint8_t>(mode));
  bytes::append<std::uint32_t>(out, static_cast<std::uint32_t>(cs.size()));
  if (mode == FragmentMode::kSeed) {
    bytes::append<std::uint64_t>(out, row_seed);
    for (const auto& v : vs) {
      bytes::append<float>(out, static_cast<float>(v.real()));
      bytes::append<float>(out, static_cast<float>(v.imag()));
    }
  } else {
    for (std::size_t i = 0; i < cs.size(); ++i) {
      bytes::append<std::uint32_t>(out, cs[i]);
      bytes::append<float>(out, static_cast<float>(vs[i].real()));
      bytes::append<float>(out, static_cast<float>(vs[i].imag()));
    }
  }
  return out;
}

Fragment decode_forwarded(const std::uint8_t* data, std::size_t size,
                          int num_cols) {
  if (num_cols < 1) {
    throw DomainError("decode_forwarded: num_cols must be positive");
  }
  bytes::Reader in(data, size);
  for (char expect : kMagic) {
    if (in.read<char>("magic") != expect) {
      throw DecodeError("fragment: bad magic", in.pos() - 1);
    }
  }
  Fragment frag;
  const auto version = in.read<std::uint8_t>("version");
  if (version != kVersion) {
    throw DecodeError("fragment: unsupported version " +
                          std::to_string(version),
                      in.pos() - 1);
  }
  frag.pulse_index = in.read<std::uint16_t>("pulse index");
  frag.antenna_id = in.read<std::uint16_t>("antenna id");
  const auto mode = in.read<std::uint8_t>("mode");
  if (mode > 1) {
    throw DecodeError("fragment: unknown mode " + std::to_string(mode),
                      in.pos() - 1);
  }
  frag.mode = static_cast<FragmentMode>(mode);
  const std::size_t count_pos = in.pos();
  const auto count = in.read<std::uint32_t>("count");
  if (frag.mode == FragmentMode::kSeed) {
    if (count > static_cast<std::uint32_t>(num_cols)) {
      throw DecodeError("fragment: count exceeds column count", count_pos);
    }
    frag.seed = in.read<std::uint64_t>("seed");
    frag.cols = rng::sample_without_replacement(
        frag.seed, static_cast<std::uint32_t>(num_cols), count);
    frag.values.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
      const double re = in.read<float>("value");
      const double im = in.read<float>("value");
      frag.values.emplace_back(re, im);
    }
  } else {
    frag.cols.reserve(count);
    frag.values.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
      const std::size_t col_pos = in.pos();
      const auto col = in.read<std::uint32_t>("column");
      if (col >= static_cast<std::uint32_t>(num_cols)) {
        throw DecodeError("fragment: column index out of range", col_pos);
      }
      if (!frag.cols.empty() && col <= frag.cols.back()) {
        throw DecodeError("fragment: columns must be strictly increasing",
                          col_pos);
      }
      frag.cols.push_back(col);
      const double re = in.read<float>("value");
      const double im = in.read<float>("value");
      frag.values.emplace_back(re, im);
    }
  }
  if (in.remaining() != 0) {
    throw DecodeError("fragment: trailing bytes", in.pos());
  }
  return frag;
}

Fragment decode_forwarded(const std::vector<std::uint8_t>& data,
                          int num_cols) {
  return decode_forwarded(data.data(), data.size(), num_cols);
}

ObservationSet assemble_from_fragments(const std::vector<Fragment>& fragments,
                                       int rows, int cols) {
  if (rows < 1 || cols < 1) {
    throw DomainError("assemble_from_fragments: shape must be positive");
  }
  ObservationSet obs;
  obs.rows = rows;
  obs.cols = cols;
  obs.scheme = Scheme::kPerAntenna;
  obs.seed = 0;
  obs.cols_by_row.resize(static_cast<std::size_t>(rows));
  obs.values_by_row.resize(static_cast<std::size_t>(rows));
  for (const Fragment& f : fragments) {
    if (f.antenna_id >= static_cast<std::uint16_t>(rows)) {
      throw DomainError("assemble_from_fragments: antenna id out of range");
    }
    auto& cs = obs.cols_by_row[f.antenna_id];
    if (!cs.empty()) {
      throw DomainError("assemble_from_fragments: duplicate antenna id " +
                        std::to_string(f.antenna_id));
    }
    for (std::uint32_t c : f.cols) {
      if (c >= static_cast<std::uint32_t>(cols)) {
        throw DomainError("assemble_from_fragments: column out of range");
      }
    }
    cs = f.cols;
    obs.values_by_row[f.antenna_id] = f.values;
  }
  return obs;
}

}  // namespace rmc
