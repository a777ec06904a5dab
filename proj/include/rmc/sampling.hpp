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

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "rmc/errors.hpp"
#include "rmc/synth.hpp"

namespace rmc {

enum class Scheme : std::uint8_t {
  kPerAntenna = 0,     ///< each receive antenna samples its own row
  kGlobalUniform = 1,  ///< uniform over the whole M_r x L grid
};

std::string_view to_string(Scheme s);
Scheme scheme_from_name(std::string_view name);

/// Observed index set, held as sorted column lists per row.
struct Mask {
  int rows = 0;
  int cols = 0;
  Scheme scheme = Scheme::kPerAntenna;
  std::uint64_t seed = 0;
  bool shared_instants = false;
  std::vector<std::vector<std::uint32_t>> cols_by_row;

  std::size_t count() const;
  double fraction() const;
};

/// Draws the observation mask. PerAntenna gives every row exactly
/// ceil(p cols) columns without replacement, drawn from the row stream
/// seeded with derive(seed, row); GlobalUniform draws ceil(p rows cols)
/// entries over the whole grid from the seed itself. shared_instants
/// reuses row 0's draw for every row (PerAntenna only).
Mask make_mask(int rows, int cols, double p, Scheme scheme,
               std::uint64_t seed, bool shared_instants = false);

/// Sampled entries of one pulse matrix: indices plus their values,
/// nothing else of the source matrix is retained.
struct ObservationSet {
  int rows = 0;
  int cols = 0;
  Scheme scheme = Scheme::kPerAntenna;
  std::uint64_t seed = 0;
  bool shared_instants = false;
  std::vector<std::vector<std::uint32_t>> cols_by_row;
  std::vector<std::vector<std::complex<double>>> values_by_row;

  std::size_t count() const;
  double fraction() const;

  /// Dense matrix with unobserved entries zero, P_Omega(Y).
  Eigen::MatrixXcd zero_filled() const;
};

ObservationSet observe(const Eigen::MatrixXcd& x, const Mask& mask);
ObservationSet observe(const Pulse& x, const Mask& mask);

enum class FragmentMode : std::uint8_t {
  kIndices = 0,  ///< explicit (column, value) pairs
  kSeed = 1,     ///< row seed; decoder regenerates the columns
};

/// One antenna's forwarded share of a pulse, as carried on the wire.
/// Values are single precision on the wire, so decoded values are the
/// f32 roundings of what was encoded.
struct Fragment {
  std::uint16_t pulse_index = 1;
  std::uint16_t antenna_id = 0;
  FragmentMode mode = FragmentMode::kIndices;
  std::uint64_t seed = 0;  ///< meaningful only in seed mode
  std::vector<std::uint32_t> cols;
  std::vector<std::complex<double>> values;
};

/// Encodes one antenna's row of an ObservationSet (docs/formats.md).
/// Seed mode is legal only for the PerAntenna scheme without shared
/// instants, where the column set is reproducible from derive(seed, row).
std::vector<std::uint8_t> encode_forwarded(const ObservationSet& obs,
                                           int antenna_id,
                                           std::uint16_t pulse_index,
                                           FragmentMode mode);

/// Decodes a fragment. num_cols is the pulse matrix column count L, which
/// the wire header does not carry; the fusion center knows it from the
/// scene config. Malformed input throws DecodeError with a byte offset.
Fragment decode_forwarded(const std::uint8_t* data, std::size_t size,
                          int num_cols);

Fragment decode_forwarded(const std::vector<std::uint8_t>& data,
                          int num_cols);

/// Pure merge of per-antenna fragments into one ObservationSet; result is
/// independent of fragment order. Rows without a fragment stay empty.
/// The merged set carries no provenance seed (seed = 0).
ObservationSet assemble_from_fragments(const std::vector<Fragment>& fragments,
                                       int rows, int cols);

}  // namespace rmc
