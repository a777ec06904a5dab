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

#include "rmc/synth.hpp"

#include <cmath>
#include <fstream>
#include <string>

#include "rmc/bytes.hpp"

namespace rmc {
namespace {

constexpr char kMagic[4] = {'R', 'P', 'M', '1'};
constexpr std::uint8_t kVersion = 1;
constexpr std::uint8_t kFlagNoisy = 0x01;
constexpr std::uint8_t kFlagF32 = 0x02;

}  // namespace

Pulse synthesize_pulse(const Scene& scene, const Eigen::MatrixXcd& waveforms,
                       const std::vector<Target>& targets, int q) {
  scene.validate();
  validate_targets(targets);
  if (waveforms.rows() != scene.num_tx ||
      waveforms.cols() != scene.num_samples) {
    throw ConfigError("synthesize_pulse: waveform matrix must be M_t x L");
  }
  if (q < 1 || q > scene.num_pulses) {
    throw DomainError("synthesize_pulse: pulse index must lie in [1, Q]");
  }
  Pulse out;
  out.pulse_index = q;
  out.entries = Eigen::MatrixXcd::Zero(scene.num_rx, scene.num_samples);
  for (const Target& t : targets) {
    const Eigen::VectorXcd a = transmit_steering(scene, t.angle_deg);
    const Eigen::VectorXcd b = receive_steering(scene, t.angle_deg);
    const std::complex<double> dq = doppler_vector(scene, t.speed_mps)(q - 1);
    // Rank-one update (beta dq) b (S^T a), built right to left so no
    // M_r x L temporary forms per target.
    const Eigen::RowVectorXcd row = a.transpose() * waveforms;
    out.entries.noalias() += (t.beta * dq) * b * row;
  }
  return out;
}

std::vector<Pulse> synthesize_cpi(const Scene& scene,
                                  const Eigen::MatrixXcd& waveforms,
                                  const std::vector<Target>& targets) {
  std::vector<Pulse> pulses;
  pulses.reserve(static_cast<std::size_t>(scene.num_pulses));
  for (int q = 1; q <= scene.num_pulses; ++q) {
    pulses.push_back(synthesize_pulse(scene, waveforms, targets, q));
  }
  return pulses;
}

double noise_sigma(const Eigen::MatrixXcd& z, double snr_db) {
  if (!std::isfinite(snr_db)) {
    throw DomainError("add_noise: SNR must be finite");
  }
  const double signal_power =
      z.squaredNorm() / static_cast<double>(z.rows() * z.cols());
  return std::sqrt(signal_power / std::pow(10.0, snr_db / 10.0));
}

Eigen::MatrixXcd add_noise(const Eigen::MatrixXcd& z, double sigma,
                           rng::SplitMix64& gen) {
  Eigen::MatrixXcd out = z;
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
      out(r, c) += sigma * gen.complex_gaussian();
    }
  }
  return out;
}

NoisyPulse add_noise(const Pulse& z, double snr_db, std::uint64_t seed) {
  if (z.is_noisy) {
    throw DomainError("add_noise: input pulse is already noisy");
  }
  NoisyPulse out;
  out.sigma = noise_sigma(z.entries, snr_db);
  rng::SplitMix64 gen(seed);
  out.pulse.entries = add_noise(z.entries, out.sigma, gen);
  out.pulse.pulse_index = z.pulse_index;
  out.pulse.is_noisy = true;
  return out;
}

std::vector<std::uint8_t> encode_pulse(const Eigen::MatrixXcd& data,
                                       std::uint16_t pulse_index, bool noisy,
                                       bool single_precision) {
  std::vector<std::uint8_t> out;
  const auto rows = static_cast<std::uint32_t>(data.rows());
  const auto cols = static_cast<std::uint32_t>(data.cols());
  out.reserve(16 + std::size_t{rows} * cols * (single_precision ? 8 : 16));
  out.insert(out.end(), kMagic, kMagic + 4);
  bytes::append<std::uint8_t>(out, kVersion);
  std::uint8_t flags = 0;
  if (noisy) flags |= kFlagNoisy;
  if (single_precision) flags |= kFlagF32;
  bytes::append<std::uint8_t>(out, flags);
  bytes::append<std::uint16_t>(out, pulse_index);
  bytes::append<std::uint32_t>(out, rows);
  bytes::append<std::uint32_t>(out, cols);
  for (std::uint32_t r = 0; r < rows; ++r) {
    for (std::uint32_t c = 0; c < cols; ++c) {
      const std::complex<double> v = data(r, c);
      if (single_precision) {
        bytes::append<float>(out, static_cast<float>(v.real()));
        bytes::append<float>(out, static_cast<float>(v.imag()));
      } else {
        bytes::append<double>(out, v.real());
        bytes::append<double>(out, v.imag());
      }
    }
  }
  return out;
}

PulseFile decode_pulse(const std::uint8_t* data, std::size_t size) {
  bytes::Reader in(data, size);
  for (char expect : kMagic) {
    if (in.read<char>("magic") != expect) {
      throw DecodeError("pulse file: bad magic", in.pos() - 1);
    }
  }
  PulseFile out;
  out.header.version = in.read<std::uint8_t>("version");
  if (out.header.version != kVersion) {
    throw DecodeError("pulse file: unsupported version " +
                          std::to_string(out.header.version),
                      in.pos() - 1);
  }
  const auto flags = in.read<std::uint8_t>("flags");
  if (flags & ~(kFlagNoisy | kFlagF32)) {
    throw DecodeError("pulse file: unknown flag bits", in.pos() - 1);
  }
  out.header.noisy = (flags & kFlagNoisy) != 0;
  out.header.single_precision = (flags & kFlagF32) != 0;
  out.header.pulse_index = in.read<std::uint16_t>("pulse index");
  const auto rows = in.read<std::uint32_t>("rows");
  const auto cols = in.read<std::uint32_t>("cols");
  const std::size_t scalar = out.header.single_precision ? 4 : 8;
  if (in.remaining() != std::size_t{rows} * cols * 2 * scalar) {
    throw DecodeError("pulse file: payload size mismatch", in.pos());
  }
  out.data.resize(rows, cols);
  for (std::uint32_t r = 0; r < rows; ++r) {
    for (std::uint32_t c = 0; c < cols; ++c) {
      double re;
      double im;
      if (out.header.single_precision) {
        re = in.read<float>("value");
        im = in.read<float>("value");
      } else {
        re = in.read<double>("value");
        im = in.read<double>("value");
      }
      out.data(r, c) = {re, im};
    }
  }
  return out;
}

void write_pulse_file(const std::filesystem::path& path, const Pulse& pulse,
                      bool single_precision) {
  const auto bytes =
      encode_pulse(pulse.entries, static_cast<std::uint16_t>(pulse.pulse_index),
                   pulse.is_noisy, single_precision);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) {
    throw IoError("cannot open for writing: " + path.string());
  }
  f.write(reinterpret_cast<const char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
  if (!f) {
    throw IoError("write failed: " + path.string());
  }
}

PulseFile read_pulse_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary | std::ios::ate);
  if (!f) {
    throw IoError("cannot open: " + path.string());
  }
  const std::streamsize size = f.tellg();
  f.seekg(0);
  std::vector<std::uint8_t> buf(static_cast<std::size_t>(size));
  f.read(reinterpret_cast<char*>(buf.data()), size);
  if (!f) {
    throw IoError("read failed: " + path.string());
  }
  return decode_pulse(buf.data(), buf.size());
}

}  // namespace rmc
