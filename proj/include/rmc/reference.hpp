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
#include <vector>

#include "rmc/scene.hpp"

// Literal, serial evaluations of the formulas, kept as oracles for the
// optimized kernels. Tests pin agreement; tools/bench compares speed.

namespace rmc::reference {

/// Entry-by-entry sum over targets of beta_k d_k(q) b_m(theta_k)
/// (a(theta_k)^T S)_l. No matrix products.
Eigen::MatrixXcd synthesize_pulse(const Scene& scene,
                                  const Eigen::MatrixXcd& waveforms,
                                  const std::vector<Target>& targets, int q);

/// Literal noise-subspace scan: builds g = d(speed) kron a(angle) at each
/// grid point and evaluates 1 / ||E_n^H g / ||g|| ||^2 against the full
/// Q M_t - K column noise subspace. Serial.
Eigen::MatrixXd music_spectrum(const Eigen::MatrixXcd& cov, int assumed_k,
                               const std::vector<double>& angle_grid,
                               const std::vector<double>& speed_grid,
                               const Scene& scene);

}  // namespace rmc::reference
