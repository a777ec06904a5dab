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

#include "rmc/scene.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "rmc/rng.hpp"

namespace rmc {
namespace detail {

Eigen::VectorXcd phase_ramp(double angle_deg, int n, double spacing_m,
                            double wavelength_m) {
  const double step = 2.0 * std::numbers::pi * spacing_m / wavelength_m *
                      std::sin(angle_deg * std::numbers::pi / 180.0);
  Eigen::VectorXcd a(n);
  for (int m = 0; m < n; ++m) {
    a(m) = std::polar(1.0, step * m);
  }
  return a;
}

}  // namespace detail

namespace {

void check_angle(double angle_deg) {
  if (!(std::abs(angle_deg) < 90.0)) {
    throw DomainError("steering: angle must lie strictly inside (-90, 90)");
  }
}

}  // namespace

void Scene::validate() const {
  if (num_tx < 1 || num_rx < 1 || num_pulses < 1 || num_samples < 1) {
    throw DomainError("scene: array and pulse dimensions must be positive");
  }
  if (num_samples < num_tx) {
    throw DomainError("scene: need L >= M_t for row-orthogonal waveforms");
  }
  if (carrier_freq <= 0.0 || pri <= 0.0 || sample_period <= 0.0) {
    throw DomainError("scene: carrier frequency and timing must be positive");
  }
  if (tx_spacing < 0.0 || rx_spacing < 0.0) {
    throw DomainError("scene: element spacing must be non-negative");
  }
}

void validate_targets(const std::vector<Target>& targets) {
  for (const Target& t : targets) {
    if (!(std::abs(t.angle_deg) < 90.0)) {
      throw DomainError("target: angle must lie strictly inside (-90, 90)");
    }
    if (!std::isfinite(t.speed_mps)) {
      throw DomainError("target: speed must be finite");
    }
    if (!std::isfinite(t.beta.real()) || !std::isfinite(t.beta.imag()) ||
        t.beta == std::complex<double>{0.0, 0.0}) {
      throw DomainError("target: reflectivity must be finite and nonzero");
    }
  }
}

std::string_view to_string(Waveform w) {
  switch (w) {
    case Waveform::kHadamard:
      return "hadamard";
    case Waveform::kGaussianOrthogonal:
      return "gaussian";
  }
  throw DomainError("waveform: unknown enumerator");
}

Waveform waveform_from_name(std::string_view name) {
  if (name == "hadamard") return Waveform::kHadamard;
  if (name == "gaussian") return Waveform::kGaussianOrthogonal;
  throw ConfigError("waveform: expected 'hadamard' or 'gaussian', got '" +
                    std::string(name) + "'");
}

Eigen::VectorXcd transmit_steering(double angle_deg, int num_tx,
                                   double spacing_m, double wavelength_m) {
  check_angle(angle_deg);
  if (num_tx < 1) throw DomainError("steering: need at least one element");
  return detail::phase_ramp(angle_deg, num_tx, spacing_m, wavelength_m);
}

Eigen::VectorXcd receive_steering(double angle_deg, int num_rx,
                                  double spacing_m, double wavelength_m) {
  check_angle(angle_deg);
  if (num_rx < 1) throw DomainError("steering: need at least one element");
  return detail::phase_ramp(angle_deg, num_rx, spacing_m, wavelength_m);
}

Eigen::VectorXcd doppler_vector(double speed_mps, int num_pulses, double pri_s,
                                double wavelength_m) {
  if (num_pulses < 1) throw DomainError("doppler: need at least one pulse");
  const double phase = 2.0 * std::numbers::pi *
                       (2.0 * speed_mps / wavelength_m) * pri_s;
  Eigen::VectorXcd d(num_pulses);
  for (int q = 0; q < num_pulses; ++q) {
    d(q) = std::polar(1.0, phase * q);
  }
  return d;
}

Eigen::VectorXcd transmit_steering(const Scene& scene, double angle_deg) {
  return transmit_steering(angle_deg, scene.num_tx, scene.tx_spacing_m(),
                           scene.wavelength());
}

Eigen::VectorXcd receive_steering(const Scene& scene, double angle_deg) {
  return receive_steering(angle_deg, scene.num_rx, scene.rx_spacing_m(),
                          scene.wavelength());
}

Eigen::VectorXcd doppler_vector(const Scene& scene, double speed_mps) {
  return doppler_vector(speed_mps, scene.num_pulses, scene.pri,
                        scene.wavelength());
}

double hadamard_entry(std::uint32_t row, std::uint32_t col) {
  return (std::popcount(row & col) & 1u) ? -1.0 : 1.0;
}

Eigen::MatrixXcd make_waveforms(Waveform kind, int num_tx, int num_samples,
                                std::uint64_t seed) {
  if (num_tx < 1 || num_samples < num_tx) {
    throw ConfigError("waveform: need L >= M_t >= 1");
  }
  Eigen::MatrixXcd s(num_tx, num_samples);
  if (kind == Waveform::kHadamard) {
    if (!std::has_single_bit(static_cast<std::uint32_t>(num_samples))) {
      throw ConfigError(
          "waveform: Sylvester-Hadamard length must be a power of two, got " +
          std::to_string(num_samples));
    }
    for (int r = 0; r < num_tx; ++r) {
      for (int c = 0; c < num_samples; ++c) {
        s(r, c) = hadamard_entry(static_cast<std::uint32_t>(r),
                                 static_cast<std::uint32_t>(c));
      }
    }
    return s;
  }
  // Gaussian orthogonal: orthonormalize the rows of an iid CN(0,1) draw.
  // QR acts on the L x M_t conjugate transpose so the thin Q has exactly
  // orthonormal columns, then S = sqrt(L) Q^H satisfies (1/L) S S^H = I.
  rng::SplitMix64 gen(seed);
  Eigen::MatrixXcd g(num_samples, num_tx);
  for (int c = 0; c < num_tx; ++c) {
    for (int r = 0; r < num_samples; ++r) {
      g(r, c) = gen.complex_gaussian();
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd thin_q =
      qr.householderQ() * Eigen::MatrixXcd::Identity(num_samples, num_tx);
  return std::sqrt(static_cast<double>(num_samples)) * thin_q.adjoint();
}

Eigen::MatrixXcd make_waveforms(const Scene& scene) {
  scene.validate();
  return make_waveforms(scene.waveform_kind, scene.num_tx, scene.num_samples,
                        rng::derive(scene.rng_seed, 0x57415645ull));
}

}  // namespace rmc
