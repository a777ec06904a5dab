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

#include "rmc/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

#include "rmc/linalg.hpp"

namespace rmc {
namespace {

// Floor for the MUSIC denominator 1 - ||E_s^H g||^2, which cancels to
// roundoff at exact noise-free nulls. The floored plateau is far narrower
// than any grid step, so peak locations are unaffected.
constexpr double kDenomFloor = 1e-15;

struct GridPeak {
  Eigen::Index i = 0;
  Eigen::Index j = 0;
  double value = 0.0;
};

}  // namespace

MatchedPulse matched_filter(const Eigen::MatrixXcd& x, int pulse_index,
                            const Eigen::MatrixXcd& waveforms) {
  if (x.cols() != waveforms.cols()) {
    throw DomainError("matched_filter: sample counts disagree");
  }
  MatchedPulse out;
  out.pulse_index = pulse_index;
  out.entries.noalias() =
      x * waveforms.adjoint() / static_cast<double>(waveforms.cols());
  return out;
}

MatchedPulse matched_filter(const Pulse& x, const Eigen::MatrixXcd& waveforms) {
  return matched_filter(x.entries, x.pulse_index, waveforms);
}

Eigen::MatrixXcd stack_and_reshape(const std::vector<MatchedPulse>& pulses,
                                   int num_pulses, int num_tx, int num_rx) {
  if (static_cast<int>(pulses.size()) != num_pulses) {
    throw DomainError("stack_and_reshape: expected exactly Q pulses");
  }
  Eigen::MatrixXcd y(static_cast<Eigen::Index>(num_pulses) * num_tx, num_rx);
  std::vector<bool> seen(static_cast<std::size_t>(num_pulses), false);
  for (const MatchedPulse& p : pulses) {
    if (p.pulse_index < 1 || p.pulse_index > num_pulses) {
      throw DomainError("stack_and_reshape: pulse index out of range");
    }
    if (seen[static_cast<std::size_t>(p.pulse_index - 1)]) {
      throw DomainError("stack_and_reshape: duplicate pulse index");
    }
    seen[static_cast<std::size_t>(p.pulse_index - 1)] = true;
    if (p.entries.rows() != num_rx || p.entries.cols() != num_tx) {
      throw DomainError("stack_and_reshape: pulse must be M_r x M_t");
    }
    y.middleRows(static_cast<Eigen::Index>(p.pulse_index - 1) * num_tx,
                 num_tx) = p.entries.transpose();
  }
  return y;
}

Eigen::MatrixXcd sample_covariance(const Eigen::MatrixXcd& y) {
  return y * y.adjoint() / static_cast<double>(y.cols());
}

std::vector<double> make_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) {
    throw DomainError("make_grid: need step > 0 and hi >= lo");
  }
  const auto n =
      static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = lo + step * static_cast<double>(i);
  }
  return grid;
}

EstimationReport music_spectrum(const Eigen::MatrixXcd& cov, int assumed_k,
                                const std::vector<double>& angle_grid,
                                const std::vector<double>& speed_grid,
                                const Scene& scene) {
  scene.validate();
  const int mt = scene.num_tx;
  const int q_n = scene.num_pulses;
  const Eigen::Index qmt = static_cast<Eigen::Index>(q_n) * mt;
  if (cov.rows() != qmt || cov.cols() != qmt) {
    throw DomainError("music_spectrum: covariance must be Q M_t square");
  }
  if (assumed_k < 1 || assumed_k >= qmt) {
    throw DomainError("music_spectrum: assumed K must lie in [1, Q M_t)");
  }
  if (angle_grid.empty() || speed_grid.empty()) {
    throw DomainError("music_spectrum: grids must be non-empty");
  }

  EstimationReport report;
  report.angle_grid = angle_grid;
  report.speed_grid = speed_grid;
  report.assumed_k = assumed_k;

  // ||E_n^H g||^2 = ||g||^2 - ||E_s^H g||^2 by completeness of the
  // eigenbasis; projecting on the K-column signal subspace is far cheaper
  // than on the (Q M_t - K)-column noise subspace. The literal noise
  // subspace scan lives in reference.hpp and the tests pin their equality.
  const linalg::Eigh eig = linalg::eigh(cov);
  const Eigen::MatrixXcd es = eig.vectors.rightCols(assumed_k);

  const double wavelength = scene.wavelength();
  const double tx_step = 2.0 * std::numbers::pi * scene.tx_spacing_m() /
                         wavelength;
  const auto n_angle = static_cast<Eigen::Index>(angle_grid.size());
  const auto n_speed = static_cast<Eigen::Index>(speed_grid.size());

  Eigen::MatrixXcd doppler(q_n, n_speed);
  for (Eigen::Index j = 0; j < n_speed; ++j) {
    const double phase = 2.0 * std::numbers::pi *
                         (2.0 * speed_grid[static_cast<std::size_t>(j)] /
                          wavelength) *
                         scene.pri;
    for (int q = 0; q < q_n; ++q) {
      doppler(q, j) = std::polar(1.0, phase * q);
    }
  }

  report.spectrum.resize(n_angle, n_speed);
  const double inv_norm2 = 1.0 / static_cast<double>(qmt);

#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n_angle; ++i) {
    const double s =
        std::sin(angle_grid[static_cast<std::size_t>(i)] * std::numbers::pi /
                 180.0);
    Eigen::VectorXcd a(mt);
    for (int m = 0; m < mt; ++m) {
      a(m) = std::polar(1.0, tx_step * s * m);
    }
    // Contract the transmit dimension once per angle:
    // t(q, k) = sum_m conj(Es[q M_t + m, k]) a_m.
    Eigen::MatrixXcd t(q_n, assumed_k);
    for (int k = 0; k < assumed_k; ++k) {
      for (int q = 0; q < q_n; ++q) {
        std::complex<double> acc = 0.0;
        for (int m = 0; m < mt; ++m) {
          acc += std::conj(es(static_cast<Eigen::Index>(q) * mt + m, k)) *
                 a(m);
        }
        t(q, k) = acc;
      }
    }
    for (Eigen::Index j = 0; j < n_speed; ++j) {
      double power = 0.0;
      for (int k = 0; k < assumed_k; ++k) {
        std::complex<double> acc = 0.0;
        for (int q = 0; q < q_n; ++q) {
          acc += t(q, k) * doppler(q, j);
        }
        power += std::norm(acc);
      }
      const double denom = std::max(1.0 - power * inv_norm2, kDenomFloor);
      report.spectrum(i, j) = 1.0 / denom;
    }
  }

  // Strict local maxima on the joint grid, value-sorted, deduplicated to
  // Chebyshev distance > 1 cell, then the top assumed_k survive.
  std::vector<GridPeak> candidates;
  for (Eigen::Index i = 0; i < n_angle; ++i) {
    for (Eigen::Index j = 0; j < n_speed; ++j) {
      const double v = report.spectrum(i, j);
      if (i > 0 && report.spectrum(i - 1, j) >= v) continue;
      if (i + 1 < n_angle && report.spectrum(i + 1, j) >= v) continue;
      if (j > 0 && report.spectrum(i, j - 1) >= v) continue;
      if (j + 1 < n_speed && report.spectrum(i, j + 1) >= v) continue;
      candidates.push_back({i, j, v});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const GridPeak& a, const GridPeak& b) {
              return std::tie(b.value, a.i, a.j) < std::tie(a.value, b.i, b.j);
            });
  std::vector<GridPeak> accepted;
  for (const GridPeak& c : candidates) {
    if (static_cast<int>(accepted.size()) == assumed_k) break;
    bool close = false;
    for (const GridPeak& a : accepted) {
      if (std::abs(a.i - c.i) <= 1 && std::abs(a.j - c.j) <= 1) {
        close = true;
        break;
      }
    }
    if (!close) accepted.push_back(c);
  }

  for (const GridPeak& pk : accepted) {
    Peak peak;
    peak.speed_mps = speed_grid[static_cast<std::size_t>(pk.j)];
    peak.value = pk.value;
    double angle = angle_grid[static_cast<std::size_t>(pk.i)];
    if (pk.i > 0 && pk.i + 1 < n_angle) {
      // The reciprocal spectrum is locally quadratic in angle, so the
      // vertex of the parabola through the three reciprocal values is a
      // near-exact refinement.
      const double dm = 1.0 / report.spectrum(pk.i - 1, pk.j);
      const double d0 = 1.0 / report.spectrum(pk.i, pk.j);
      const double dp = 1.0 / report.spectrum(pk.i + 1, pk.j);
      const double curv = dm - 2.0 * d0 + dp;
      if (curv > 0.0) {
        const double offset =
            std::clamp(0.5 * (dm - dp) / curv, -0.5, 0.5);
        const double step =
            angle_grid[static_cast<std::size_t>(pk.i + 1)] -
            angle_grid[static_cast<std::size_t>(pk.i)];
        angle += offset * step;
      }
    }
    peak.angle_deg = angle;
    report.peaks.push_back(peak);
  }
  return report;
}

std::vector<double> doa_spectrum(const EstimationReport& report) {
  std::vector<double> out(report.angle_grid.size());
  for (Eigen::Index i = 0; i < report.spectrum.rows(); ++i) {
    out[static_cast<std::size_t>(i)] = report.spectrum.row(i).maxCoeff();
  }
  return out;
}

std::vector<double> peak_angles(const EstimationReport& report) {
  std::vector<double> out;
  out.reserve(report.peaks.size());
  for (const Peak& p : report.peaks) out.push_back(p.angle_deg);
  return out;
}

std::vector<bool> resolution_success(const std::vector<double>& estimates,
                                     const std::vector<double>& truths,
                                     double d_theta, double epsilon) {
  if (estimates.size() != truths.size()) {
    throw DomainError("resolution_success: list lengths must match");
  }
  const double limit = epsilon * d_theta;
  const std::size_t n = truths.size();
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  pairs.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      pairs.emplace_back(std::abs(estimates[i] - truths[j]), i, j);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<bool> est_used(n, false);
  std::vector<bool> truth_used(n, false);
  std::vector<bool> success(n, false);
  for (const auto& [dist, i, j] : pairs) {
    if (est_used[i] || truth_used[j]) continue;
    est_used[i] = true;
    truth_used[j] = true;
    success[j] = dist <= limit;
  }
  return success;
}

}  // namespace rmc
