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

#include "rmc/completion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rmc/linalg.hpp"

namespace rmc {
namespace {

// Gram-path singular values satisfy sigma_err ~ n eps (sigma1/sigma)^2;
// once the threshold falls below this fraction of the initial spectral
// norm the shrunk directions are no longer trustworthy and kAuto moves
// to the exact SVD.
constexpr double kGramSwitch = 3e-5;

struct Shrunk {
  Eigen::MatrixXcd x;
  double nuclear = 0.0;
};

Shrunk shrink_exact(const Eigen::MatrixXcd& g, double tau) {
  const linalg::Svd svd = linalg::svd_econ(g);
  Eigen::Index keep = 0;
  while (keep < svd.s.size() && svd.s(keep) > tau) ++keep;
  Shrunk out;
  if (keep == 0) {
    out.x = Eigen::MatrixXcd::Zero(g.rows(), g.cols());
    return out;
  }
  const Eigen::VectorXd shrunk =
      svd.s.head(keep).array() - tau;
  out.nuclear = shrunk.sum();
  out.x.noalias() = svd.u.leftCols(keep) *
                    (shrunk.asDiagonal() * svd.v.leftCols(keep).adjoint());
  return out;
}

Shrunk shrink_gram(const Eigen::MatrixXcd& g, double tau) {
  // Singular pairs of g from the Hermitian eigenproblem of the smaller
  // gram matrix; X_tau = U diag((sigma - tau)/sigma) U^H g (m <= n case).
  const bool wide = g.rows() <= g.cols();
  Eigen::MatrixXcd h;
  if (wide) {
    h.noalias() = g * g.adjoint();
  } else {
    h.noalias() = g.adjoint() * g;
  }
  const linalg::Eigh eig = linalg::eigh(h);  // ascending
  const Eigen::Index n = eig.values.size();
  Eigen::Index first = n;
  while (first > 0 &&
         std::sqrt(std::max(eig.values(first - 1), 0.0)) > tau) {
    --first;
  }
  const Eigen::Index keep = n - first;
  Shrunk out;
  if (keep == 0) {
    out.x = Eigen::MatrixXcd::Zero(g.rows(), g.cols());
    return out;
  }
  Eigen::VectorXd coef(keep);
  for (Eigen::Index i = 0; i < keep; ++i) {
    const double sigma = std::sqrt(std::max(eig.values(first + i), 0.0));
    coef(i) = (sigma - tau) / sigma;
    out.nuclear += sigma - tau;
  }
  const auto basis = eig.vectors.rightCols(keep);
  if (wide) {
    out.x.noalias() = basis * (coef.asDiagonal() * (basis.adjoint() * g));
  } else {
    out.x.noalias() = ((g * basis) * coef.asDiagonal()) * basis.adjoint();
  }
  return out;
}

struct Observed {
  std::vector<Eigen::Index> offsets;  // column-major flat positions
  Eigen::VectorXcd y;
  double norm = 0.0;
};

Observed flatten(const ObservationSet& obs) {
  Observed out;
  out.offsets.reserve(obs.count());
  out.y.resize(static_cast<Eigen::Index>(obs.count()));
  Eigen::Index i = 0;
  for (int r = 0; r < obs.rows; ++r) {
    const auto& cs = obs.cols_by_row[static_cast<std::size_t>(r)];
    const auto& vs = obs.values_by_row[static_cast<std::size_t>(r)];
    if (cs.size() != vs.size()) {
      throw DomainError("complete: observation indices/values mismatch");
    }
    for (std::size_t k = 0; k < cs.size(); ++k) {
      if (cs[k] >= static_cast<std::uint32_t>(obs.cols)) {
        throw DomainError("complete: observation column out of range");
      }
      out.offsets.push_back(static_cast<Eigen::Index>(r) +
                            static_cast<Eigen::Index>(cs[k]) * obs.rows);
      out.y(i++) = vs[k];
    }
  }
  out.norm = out.y.norm();
  return out;
}

double residual_at(const Eigen::MatrixXcd& x, const Observed& obs) {
  double acc = 0.0;
  const auto* data = x.data();
  for (Eigen::Index i = 0; i < obs.y.size(); ++i) {
    acc += std::norm(data[obs.offsets[i]] - obs.y(i));
  }
  return std::sqrt(acc);
}

/// Replaces observed entries by their projection onto the delta ball
/// around y; a no-op when the residual is already within delta.
Eigen::MatrixXcd project_candidate(const Eigen::MatrixXcd& x,
                                   const Observed& obs, double residual,
                                   double delta) {
  if (residual <= delta) return x;
  Eigen::MatrixXcd out = x;
  const double alpha = delta > 0.0 ? delta / residual : 0.0;
  auto* data = out.data();
  for (Eigen::Index i = 0; i < obs.y.size(); ++i) {
    data[obs.offsets[i]] = obs.y(i) + alpha * (data[obs.offsets[i]] - obs.y(i));
  }
  return out;
}

}  // namespace

void SolverOptions::validate() const {
  if (mu0_factor <= 0.0 || mu_decay <= 0.0 || mu_decay >= 1.0 ||
      max_stages < 1 || max_inner_iterations < 1 || inner_tolerance <= 0.0 ||
      step_size <= 0.0 || stage_tolerance <= 0.0 || feasibility_slack < 0.0) {
    throw DomainError("solver options: all controls must be positive");
  }
}

Eigen::MatrixXcd sv_soft_threshold(const Eigen::MatrixXcd& m, double tau) {
  if (tau < 0.0) {
    throw DomainError("sv_soft_threshold: tau must be non-negative");
  }
  return shrink_exact(m, tau).x;
}

double choose_delta(double noise_sigma, std::size_t observed_count) {
  if (noise_sigma < 0.0) {
    throw DomainError("choose_delta: sigma must be non-negative");
  }
  if (observed_count < 1) {
    throw DomainError("choose_delta: need at least one observation");
  }
  const auto n = static_cast<double>(observed_count);
  return noise_sigma * std::sqrt(n + std::sqrt(8.0 * n));
}

double recovery_error_bound(double p, int n1, int n2, double delta) {
  if (!(p > 0.0) || p > 1.0) {
    throw DomainError("recovery_error_bound: p must lie in (0, 1]");
  }
  if (n1 < 1 || n2 < 1 || delta < 0.0) {
    throw DomainError("recovery_error_bound: invalid shape or delta");
  }
  const double m = static_cast<double>(std::min(n1, n2));
  return 4.0 * std::sqrt((2.0 + p) * m / p) * delta + 2.0 * delta;
}

CompletionResult complete(const CompletionProblem& problem) {
  const ObservationSet& obs = problem.observations;
  const double delta = problem.delta;
  const SolverOptions& opt = problem.options;
  opt.validate();
  if (delta < 0.0) {
    throw DomainError("complete: delta must be non-negative");
  }
  if (obs.rows < 1 || obs.cols < 1 || obs.count() == 0) {
    throw DomainError("complete: observation set is empty");
  }

  const Observed ob = flatten(obs);
  CompletionResult result;

  // The zero matrix is optimal whenever it is feasible.
  if (ob.norm <= delta) {
    result.estimate = Eigen::MatrixXcd::Zero(obs.rows, obs.cols);
    result.residual = ob.norm;
    result.converged = true;
    return result;
  }

  const Eigen::MatrixXcd y0 = obs.zero_filled();
  const double sigma1 = linalg::spectral_norm(y0);
  const double mu0 = opt.mu0_factor * sigma1;
  const double feas_limit =
      delta * (1.0 + opt.feasibility_slack) + 1e-14 * ob.norm;

  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(obs.rows, obs.cols);
  double x_nuclear = 0.0;
  double best_nuclear = std::numeric_limits<double>::infinity();
  Eigen::MatrixXcd prev_candidate;
  int total_iters = 0;
  bool stopped = false;

  for (int stage = 0; stage < opt.max_stages && !stopped; ++stage) {
    const double mu = mu0 * std::pow(opt.mu_decay, stage);
    const double tau = mu * opt.step_size;
    const bool gram = opt.backend == SvtBackend::kGram ||
                      (opt.backend == SvtBackend::kAuto &&
                       tau > kGramSwitch * sigma1);

    // FISTA on mu ||X||_* + 0.5 ||P_Omega(X) - y||^2, warm-started; the
    // best-merit iterate of the stage is kept so the stage-end merit can
    // never rise.
    Eigen::MatrixXcd z = x;
    Eigen::MatrixXcd x_cur = x;
    double t = 1.0;
    double best_merit =
        mu * x_nuclear + 0.5 * std::pow(residual_at(x, ob), 2);
    Eigen::MatrixXcd best_x = x;
    double best_x_nuclear = x_nuclear;
    for (int it = 0; it < opt.max_inner_iterations; ++it) {
      Eigen::MatrixXcd g = z;
      {
        auto* data = g.data();
        for (Eigen::Index i = 0; i < ob.y.size(); ++i) {
          data[ob.offsets[i]] -=
              opt.step_size * (data[ob.offsets[i]] - ob.y(i));
        }
      }
      Shrunk next = gram ? shrink_gram(g, tau) : shrink_exact(g, tau);
      ++total_iters;
      const double res = residual_at(next.x, ob);
      const double merit = mu * next.nuclear + 0.5 * res * res;
      if (merit < best_merit) {
        best_merit = merit;
        best_x = next.x;
        best_x_nuclear = next.nuclear;
      }
      if (opt.record_trace) {
        result.trace.push_back(
            {total_iters, stage, mu, merit, res, false});
      }
      const double diff = (next.x - x_cur).norm();
      const double scale = std::max(x_cur.norm(), 1e-30);
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      z = next.x + ((t - 1.0) / t_next) * (next.x - x_cur);
      x_cur = std::move(next.x);
      t = t_next;
      if (diff <= opt.inner_tolerance * scale) break;
    }
    x = best_x;
    x_nuclear = best_x_nuclear;

    const double raw_residual = residual_at(x, ob);
    if (opt.record_trace) {
      result.trace.push_back({total_iters, stage, mu,
                              mu * x_nuclear + 0.5 * raw_residual * raw_residual,
                              raw_residual, true});
    }

    Eigen::MatrixXcd candidate = project_candidate(x, ob, raw_residual, delta);
    const double cand_nuclear = raw_residual <= delta
                                    ? x_nuclear
                                    : linalg::nuclear_norm(candidate);
    if (cand_nuclear < best_nuclear) {
      best_nuclear = cand_nuclear;
      result.estimate = candidate;
      result.nuclear_norm = cand_nuclear;
      result.residual = residual_at(candidate, ob);
    }

    if (raw_residual <= feas_limit) {
      result.converged = true;
      stopped = true;
    } else if (stage > 0) {
      const double change = (candidate - prev_candidate).norm();
      if (change <= opt.stage_tolerance *
                        std::max(prev_candidate.norm(), 1e-30)) {
        result.converged = true;
        stopped = true;
      }
    }
    prev_candidate = std::move(candidate);
  }

  result.iterations = total_iters;
  return result;
}

}  // namespace rmc
