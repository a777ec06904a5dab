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
#include <cstdint>
#include <filesystem>
#include <vector>

#include "rmc/rng.hpp"
#include "rmc/scene.hpp"

namespace rmc {

/// Receive data matrix of one pulse, M_r x L. pulse_index is 1-based (q in
/// [1, Q]); a noise-free instance with K targets has numerical rank K when
/// M_t > K and M_r > K.
struct Pulse {
  Eigen::MatrixXcd entries;
  int pulse_index = 1;
  bool is_noisy = false;
};

struct NoisyPulse {
  Pulse pulse;
  double sigma = 0.0;  ///< realized per-entry noise standard deviation
};

/// Noise-free receive matrix for pulse q (1-based):
///   Z_q = B diag(beta) D_q A^T S
/// with D_q the diagonal of each target's Doppler element q-1.
Pulse synthesize_pulse(const Scene& scene, const Eigen::MatrixXcd& waveforms,
                       const std::vector<Target>& targets, int q);

/// All Q pulses of one coherent processing interval.
std::vector<Pulse> synthesize_cpi(const Scene& scene,
                                  const Eigen::MatrixXcd& waveforms,
                                  const std::vector<Target>& targets);

/// Per-entry complex noise variance realizing the requested SNR against
/// the given signal matrix: sigma^2 = |Z|_F^2 / (m n 10^(snr/10)).
double noise_sigma(const Eigen::MatrixXcd& z, double snr_db);

/// Adds iid CN(0, sigma^2) noise, column-major draw order.
Eigen::MatrixXcd add_noise(const Eigen::MatrixXcd& z, double sigma,
                           rng::SplitMix64& gen);

/// Noisy copy of a noise-free pulse plus the sigma used, for downstream
/// constraint-radius selection. Throws DomainError if z is already noisy
/// or snr_db is not finite.
NoisyPulse add_noise(const Pulse& z, double snr_db, std::uint64_t seed);

/// Decoded pulse-matrix file.
struct PulseFileHeader {
  std::uint8_t version = 1;
  bool noisy = false;
  bool single_precision = false;
  std::uint16_t pulse_index = 1;
};

struct PulseFile {
  PulseFileHeader header;
  Eigen::MatrixXcd data;
};

/// Binary pulse format (docs/formats.md): 16-byte header followed by the
/// row-major payload, real part before imaginary part, f64 or f32 pairs.
std::vector<std::uint8_t> encode_pulse(const Eigen::MatrixXcd& data,
                                       std::uint16_t pulse_index, bool noisy,
                                       bool single_precision);

PulseFile decode_pulse(const std::uint8_t* bytes, std::size_t size);

void write_pulse_file(const std::filesystem::path& path, const Pulse& pulse,
                      bool single_precision = false);

PulseFile read_pulse_file(const std::filesystem::path& path);

}  // namespace rmc
