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
#include <string_view>
#include <vector>

#include "rmc/errors.hpp"

namespace rmc {

inline constexpr double kSpeedOfLight = 299792458.0;

enum class Waveform : std::uint8_t {
  kHadamard = 0,
  kGaussianOrthogonal = 1,
};

std::string_view to_string(Waveform w);

/// Parses "hadamard" or "gaussian"; throws ConfigError otherwise.
Waveform waveform_from_name(std::string_view name);

/// Colocated MIMO radar geometry, timing, and waveform selection.
/// Both arrays are uniform linear; spacing 0 means half a wavelength.
struct Scene {
  int num_tx = 20;              ///< transmit elements M_t
  int num_rx = 40;              ///< receive elements M_r
  double tx_spacing = 0.0;      ///< d_t, meters (0 = lambda/2)
  double rx_spacing = 0.0;      ///< d_r, meters (0 = lambda/2)
  double carrier_freq = 1.0e9;  ///< f, Hz
  int num_pulses = 10;          ///< Q
  double pri = 2.5e-4;          ///< T_PRI, seconds
  int num_samples = 128;        ///< L, samples per pulse
  double sample_period = 1.0e-6;  ///< T_s, seconds
  Waveform waveform_kind = Waveform::kHadamard;
  std::uint64_t rng_seed = 1;

  double wavelength() const { return kSpeedOfLight / carrier_freq; }
  double tx_spacing_m() const {
    return tx_spacing > 0.0 ? tx_spacing : 0.5 * wavelength();
  }
  double rx_spacing_m() const {
    return rx_spacing > 0.0 ? rx_spacing : 0.5 * wavelength();
  }

  /// Throws DomainError on non-positive dimensions/timing or L < M_t.
  void validate() const;
};

/// Point target: direction of arrival, radial speed, complex reflectivity.
/// The reflectivity is held constant across all Q pulses of a scene.
struct Target {
  double angle_deg = 0.0;
  double speed_mps = 0.0;
  std::complex<double> beta = {1.0, 0.0};
};

/// Throws DomainError unless |angle| < 90 and beta is finite and nonzero.
void validate_targets(const std::vector<Target>& targets);

namespace detail {
/// Unit-modulus phase ramp exp(j (2 pi / lambda) m d sin(theta)),
/// m = 0..n-1. No angle-domain check; shared by steering and the
/// spectrum kernels, which scan the closed interval [-90, 90].
Eigen::VectorXcd phase_ramp(double angle_deg, int n, double spacing_m,
                            double wavelength_m);
}  // namespace detail

/// Transmit steering vector; element 0 is exactly 1.
/// Throws DomainError unless |angle| < 90 and num_tx >= 1.
Eigen::VectorXcd transmit_steering(double angle_deg, int num_tx,
                                   double spacing_m, double wavelength_m);

/// Receive steering vector; identical phase law over the receive array.
Eigen::VectorXcd receive_steering(double angle_deg, int num_rx,
                                  double spacing_m, double wavelength_m);

/// Slow-time Doppler vector, element q = exp(j 2 pi (2 v / lambda) q T_pri),
/// q = 0..Q-1; element 0 is exactly 1.
Eigen::VectorXcd doppler_vector(double speed_mps, int num_pulses, double pri_s,
                                double wavelength_m);

Eigen::VectorXcd transmit_steering(const Scene& scene, double angle_deg);
Eigen::VectorXcd receive_steering(const Scene& scene, double angle_deg);
Eigen::VectorXcd doppler_vector(const Scene& scene, double speed_mps);

/// Orthogonal waveform matrix S (M_t x L) with (1/L) S S^H = I.
/// Hadamard rows come from the order-L Sylvester matrix, so L must be a
/// power of two; both kinds require L >= M_t. The seed is consumed only
/// by the Gaussian construction.
Eigen::MatrixXcd make_waveforms(Waveform kind, int num_tx, int num_samples,
                                std::uint64_t seed);

Eigen::MatrixXcd make_waveforms(const Scene& scene);

/// Sylvester Hadamard entry, (-1)^popcount(r & c).
double hadamard_entry(std::uint32_t row, std::uint32_t col);

}  // namespace rmc
