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
#include <cstddef>
#include <vector>

#include "rmc/sampling.hpp"

namespace rmc {

/// Which SVD the singular-value shrinkage step uses. The gram path gets
/// singular pairs from an eigendecomposition of X X^H (or X^H X), which
/// is several times faster at radar shapes but loses accuracy once the
/// threshold drops far below the top singular value; kAuto switches from
/// gram to exact at that point.
enum class SvtBackend : std::uint8_t { kAuto = 0, kExact = 1, kGram = 2 };

struct SolverOptions {
  double mu0_factor = 0.9;   ///< mu0 = factor * ||P_Omega(Y)||_2
  double mu_decay = 0.5;     ///< per-stage continuation factor
  int max_stages = 20;
  int max_inner_iterations = 500;
  double inner_tolerance = 1e-6;   ///< relative iterate change
  double step_size = 1.0;          ///< gradient step; P_Omega has Lipschitz 1
  double stage_tolerance = 1e-7;   ///< relative candidate change across stages
  double feasibility_slack = 1e-6;
  SvtBackend backend = SvtBackend::kAuto;
  bool record_trace = true;

  void validate() const;
};

struct CompletionProblem {
  ObservationSet observations;
  double delta = 0.0;  ///< constraint radius, ||P_Omega(X - Y)||_F <= delta
  SolverOptions options;
};

struct TraceRow {
  int iteration = 0;  ///< global inner-iteration counter
  int stage = 0;
  double mu = 0.0;
  double objective = 0.0;  ///< mu ||X||_* + 0.5 ||P_Omega(X) - y||_F^2
  double residual = 0.0;
  bool stage_end = false;
};

struct CompletionResult {
  Eigen::MatrixXcd estimate;
  double residual = 0.0;
  double nuclear_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<TraceRow> trace;
};

/// Solves min ||X||_* s.t. ||P_Omega(X - Y)||_F <= delta by accelerated
/// proximal gradient on the penalized form with decreasing-mu continuation.
/// Stage-end iterates are projected onto the delta ball over Omega, so the
/// returned estimate is always feasible; among the retained candidates the
/// one of smallest nuclear norm wins. Deterministic. Throws DomainError on
/// an empty observation set or delta < 0; non-convergence is reported via
/// converged = false, never an exception.
CompletionResult complete(const CompletionProblem& problem);

/// Proximal operator of tau ||.||_*: U max(S - tau, 0) V^H.
Eigen::MatrixXcd sv_soft_threshold(const Eigen::MatrixXcd& m, double tau);

/// Constraint radius for iid complex Gaussian noise of per-entry variance
/// sigma^2 over N observed entries: sigma sqrt(N + sqrt(8 N)), a
/// high-probability upper bound on ||P_Omega(E)||_F.
double choose_delta(double noise_sigma, std::size_t observed_count);

/// Theoretical recovery bound 4 sqrt((2 + p) min(n1, n2) / p) delta
/// + 2 delta.
double recovery_error_bound(double p, int n1, int n2, double delta);

}  // namespace rmc
