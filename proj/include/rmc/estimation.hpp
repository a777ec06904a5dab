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
#include "rmc/synth.hpp"

namespace rmc {

/// Matched-filter output of one pulse, M_r x M_t.
struct MatchedPulse {
  Eigen::MatrixXcd entries;
  int pulse_index = 1;
};

/// Y_q = (1/L) X_q S^H; cancels orthogonal waveforms exactly, leaving
/// B Sigma D_q A^T for noise-free fully observed input.
MatchedPulse matched_filter(const Pulse& x, const Eigen::MatrixXcd& waveforms);

MatchedPulse matched_filter(const Eigen::MatrixXcd& x, int pulse_index,
                            const Eigen::MatrixXcd& waveforms);

/// Stacks Q matched pulses into Y (Q M_t x M_r) with
/// Y[(q-1) M_t + m_t, m_r] = Y_q[m_r, m_t]; the order of the input list
/// does not matter, pulses are placed by their 1-based index. Noise-free
/// Y equals F Sigma B^T with F's k-th column d(speed_k) kron a(angle_k).
Eigen::MatrixXcd stack_and_reshape(const std::vector<MatchedPulse>& pulses,
                                   int num_pulses, int num_tx, int num_rx);

/// R = (1/M_r) Y Y^H, Hermitian positive semidefinite.
Eigen::MatrixXcd sample_covariance(const Eigen::MatrixXcd& y);

struct Peak {
  double angle_deg = 0.0;
  double speed_mps = 0.0;
  double value = 0.0;
};

struct EstimationReport {
  std::vector<double> angle_grid;
  std::vector<double> speed_grid;
  Eigen::MatrixXd spectrum;  ///< angle x speed, strictly positive
  std::vector<Peak> peaks;   ///< at most assumed_k, sorted by value desc
  int assumed_k = 0;
  std::vector<bool> success;  ///< per target, filled by resolution scoring
};

/// Joint angle-Doppler MUSIC over the given grids. The noise subspace is
/// the eigenvectors of the Q M_t - K smallest eigenvalues of cov;
/// spectrum = 1 / ||E_n^H g||^2 with g the normalized d(speed) kron
/// a(angle) steering vector. Peaks are local maxima of the joint grid,
/// refined by parabolic interpolation in angle. Fixing known speeds is
/// the special case of a speed grid holding just those values.
/// Throws DomainError when assumed_k >= Q M_t, grids are empty, or cov
/// does not match the scene's Q M_t.
EstimationReport music_spectrum(const Eigen::MatrixXcd& cov, int assumed_k,
                                const std::vector<double>& angle_grid,
                                const std::vector<double>& speed_grid,
                                const Scene& scene);

/// Max over speeds per angle (DOA-only view of the joint spectrum).
std::vector<double> doa_spectrum(const EstimationReport& report);

/// Peak angles in report order (value-descending).
std::vector<double> peak_angles(const EstimationReport& report);

/// Inclusive uniform grid lo, lo + step, ..., hi.
std::vector<double> make_grid(double lo, double hi, double step);

/// Greedy nearest-assignment success per target: estimate matched to the
/// closest unmatched truth; target i succeeds iff its matched estimate
/// satisfies |angle - estimate| <= epsilon * d_theta. Lists must have
/// equal length.
std::vector<bool> resolution_success(const std::vector<double>& estimates,
                                     const std::vector<double>& truths,
                                     double d_theta, double epsilon);

}  // namespace rmc
