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
#include <utility>
#include <vector>

#include "rmc/errors.hpp"

namespace rmc {

/// Strong-incoherence diagnostics of one matrix at rank r.
struct IncoherenceReport {
  int rank_used = 0;
  int n1 = 0;
  int n2 = 0;
  double m1 = 0.0;  ///< max entry magnitude over the r left singular vectors
  double m2 = 0.0;  ///< same over the right singular vectors
  double mu1 = 0.0;
  double mu2 = 0.0;
  double mu = 0.0;  ///< max(mu1, mu2)
};

/// (m1, m2): maximum entry magnitudes over the leading r left and right
/// singular vectors. Unit-norm vectors force 1/sqrt(n) <= m <= 1.
/// Throws DomainError for r > min(n1, n2), r < 1, or a zero matrix.
std::pair<double, double> singular_vector_maxima(const Eigen::MatrixXcd& m,
                                                 int r);

/// Smallest mu1/mu2 satisfying the strong-incoherence inequalities with
/// equality at the max:
///   mu1 = max over both projectors of max |[P]_{ab} - (r/n) 1_{a=b}| n/sqrt(r)
///   mu2 = max |T_ab| sqrt(n1 n2)/sqrt(r),  T = sum_i u_i v_i^H.
IncoherenceReport strong_incoherence_mu(const Eigen::MatrixXcd& m, int r);

/// Pr(sample > threshold) for each grid threshold; non-increasing in the
/// threshold. Throws DomainError on empty samples.
std::vector<double> empirical_ccdf(const std::vector<double>& samples,
                                   const std::vector<double>& grid);

/// Empirical quantile (linear interpolation between order statistics).
double empirical_quantile(std::vector<double> samples, double q);

struct MuBFit {
  double mu_b = 0.0;
  double residual = 0.0;  ///< RMS misfit of the sqrt(mu_b / n) model
};

/// Least-squares fit of m_bound = sqrt(mu_b / n) over (n, m_bound) points.
/// Requires at least two points with strictly increasing n.
MuBFit fit_mu_b(const std::vector<std::pair<double, double>>& points);

}  // namespace rmc
