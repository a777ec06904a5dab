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

#include "rmc/reference.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "rmc/linalg.hpp"

namespace rmc::reference {

Eigen::MatrixXcd synthesize_pulse(const Scene& scene,
                                  const Eigen::MatrixXcd& waveforms,
                                  const std::vector<Target>& targets, int q) {
  scene.validate();
  Eigen::MatrixXcd z =
      Eigen::MatrixXcd::Zero(scene.num_rx, scene.num_samples);
  for (const Target& t : targets) {
    const Eigen::VectorXcd a = transmit_steering(scene, t.angle_deg);
    const Eigen::VectorXcd b = receive_steering(scene, t.angle_deg);
    const std::complex<double> dq = doppler_vector(scene, t.speed_mps)(q - 1);
    for (int mr = 0; mr < scene.num_rx; ++mr) {
      for (int l = 0; l < scene.num_samples; ++l) {
        std::complex<double> inner = 0.0;
        for (int mt = 0; mt < scene.num_tx; ++mt) {
          inner += a(mt) * waveforms(mt, l);
        }
        z(mr, l) += t.beta * dq * b(mr) * inner;
      }
    }
  }
  return z;
}

Eigen::MatrixXd music_spectrum(const Eigen::MatrixXcd& cov, int assumed_k,
                               const std::vector<double>& angle_grid,
                               const std::vector<double>& speed_grid,
                               const Scene& scene) {
  const int mt = scene.num_tx;
  const int q_n = scene.num_pulses;
  const Eigen::Index qmt = static_cast<Eigen::Index>(q_n) * mt;
  const linalg::Eigh eig = linalg::eigh(cov);
  const Eigen::MatrixXcd en = eig.vectors.leftCols(qmt - assumed_k);

  const double wavelength = scene.wavelength();
  Eigen::MatrixXd spectrum(angle_grid.size(), speed_grid.size());
  for (std::size_t i = 0; i < angle_grid.size(); ++i) {
    const Eigen::VectorXcd a = detail::phase_ramp(
        angle_grid[i], mt, scene.tx_spacing_m(), wavelength);
    for (std::size_t j = 0; j < speed_grid.size(); ++j) {
      const Eigen::VectorXcd d =
          doppler_vector(speed_grid[j], q_n, scene.pri, wavelength);
      Eigen::VectorXcd g(qmt);
      for (int q = 0; q < q_n; ++q) {
        for (int m = 0; m < mt; ++m) {
          g(static_cast<Eigen::Index>(q) * mt + m) = d(q) * a(m);
        }
      }
      g /= g.norm();
      const double denom = std::max((en.adjoint() * g).squaredNorm(), 1e-15);
      spectrum(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          1.0 / denom;
    }
  }
  return spectrum;
}

}  // namespace rmc::reference
