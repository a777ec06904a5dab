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

#include "rmc/incoherence.hpp"

#include <algorithm>
#include <cmath>

#include "rmc/linalg.hpp"

namespace rmc {
namespace {

linalg::Svd leading_svd(const Eigen::MatrixXcd& m, int r) {
  if (r < 1 || r > std::min(m.rows(), m.cols())) {
    throw DomainError("incoherence: rank must lie in [1, min(n1, n2)]");
  }
  if (m.norm() == 0.0) {
    throw DomainError("incoherence: matrix is zero");
  }
  return linalg::svd_econ(m);
}

double projector_deviation(const Eigen::MatrixXcd& basis, int r) {
  // max |[P]_{ab} - (r/n) 1_{a=b}| for P = basis basis^H.
  const auto n = basis.rows();
  Eigen::MatrixXcd p = basis * basis.adjoint();
  p.diagonal().array() -= static_cast<double>(r) / static_cast<double>(n);
  return p.cwiseAbs().maxCoeff();
}

}  // namespace

std::pair<double, double> singular_vector_maxima(const Eigen::MatrixXcd& m,
                                                 int r) {
  const linalg::Svd svd = leading_svd(m, r);
  const double m1 = svd.u.leftCols(r).cwiseAbs().maxCoeff();
  const double m2 = svd.v.leftCols(r).cwiseAbs().maxCoeff();
  return {m1, m2};
}

IncoherenceReport strong_incoherence_mu(const Eigen::MatrixXcd& m, int r) {
  const linalg::Svd svd = leading_svd(m, r);
  IncoherenceReport rep;
  rep.rank_used = r;
  rep.n1 = static_cast<int>(m.rows());
  rep.n2 = static_cast<int>(m.cols());
  const auto u = svd.u.leftCols(r);
  const auto v = svd.v.leftCols(r);
  rep.m1 = u.cwiseAbs().maxCoeff();
  rep.m2 = v.cwiseAbs().maxCoeff();
  const double sqrt_r = std::sqrt(static_cast<double>(r));
  rep.mu1 = std::max(projector_deviation(u, r) * rep.n1 / sqrt_r,
                     projector_deviation(v, r) * rep.n2 / sqrt_r);
  const Eigen::MatrixXcd t = u * v.adjoint();
  rep.mu2 = t.cwiseAbs().maxCoeff() *
            std::sqrt(static_cast<double>(rep.n1) * rep.n2) / sqrt_r;
  rep.mu = std::max(rep.mu1, rep.mu2);
  return rep;
}

std::vector<double> empirical_ccdf(const std::vector<double>& samples,
                                   const std::vector<double>& grid) {
  if (samples.empty()) {
    throw DomainError("empirical_ccdf: need at least one sample");
  }
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> curve;
  curve.reserve(grid.size());
  for (double threshold : grid) {
    const auto above = sorted.end() - std::upper_bound(sorted.begin(),
                                                       sorted.end(), threshold);
    curve.push_back(static_cast<double>(above) /
                    static_cast<double>(sorted.size()));
  }
  return curve;
}

double empirical_quantile(std::vector<double> samples, double q) {
  if (samples.empty()) {
    throw DomainError("empirical_quantile: need at least one sample");
  }
  if (q < 0.0 || q > 1.0) {
    throw DomainError("empirical_quantile: q must lie in [0, 1]");
  }
  std::sort(samples.begin(), samples.end());
  const double pos = q * static_cast<double>(samples.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= samples.size()) return samples.back();
  const double frac = pos - static_cast<double>(lo);
  return samples[lo] * (1.0 - frac) + samples[lo + 1] * frac;
}

MuBFit fit_mu_b(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) {
    throw DomainError("fit_mu_b: need at least two points");
  }
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i].first > points[i - 1].first)) {
      throw DomainError("fit_mu_b: n must be strictly increasing");
    }
  }
  // m = c / sqrt(n) is linear in c: c = sum(m_i / sqrt(n_i)) / sum(1 / n_i).
  double num = 0.0;
  double den = 0.0;
  for (const auto& [n, m] : points) {
    if (n <= 0.0) throw DomainError("fit_mu_b: n must be positive");
    num += m / std::sqrt(n);
    den += 1.0 / n;
  }
  MuBFit fit;
  const double c = num / den;
  fit.mu_b = c * c;
  double ss = 0.0;
  for (const auto& [n, m] : points) {
    const double e = m - c / std::sqrt(n);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / static_cast<double>(points.size()));
  return fit;
}

}  // namespace rmc
