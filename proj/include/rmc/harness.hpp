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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rmc/completion.hpp"
#include "rmc/estimation.hpp"
#include "rmc/incoherence.hpp"
#include "rmc/rng.hpp"
#include "rmc/sampling.hpp"
#include "rmc/scene.hpp"

namespace rmc {

inline constexpr std::string_view kRmcVersion{"0.1.0"};

/// Random-target specification: angles uniform on [angle_lo, angle_hi],
/// speeds uniform on [speed_lo, speed_hi], reflectivities CN(0,1) unless
/// random_beta is off. min_separation is enforced between every angle
/// pair by rejection.
struct TargetDraw {
  int count = 2;
  double angle_lo = -90.0;
  double angle_hi = 90.0;
  double speed_lo = 150.0;
  double speed_hi = 450.0;
  double min_separation = 0.0;
  bool random_beta = true;
};

std::vector<Target> draw_targets(const TargetDraw& draw, rng::SplitMix64& gen);

/// One Monte Carlo experiment configuration; JSON mirror documented in
/// README. Fixed targets take precedence over the random draw when the
/// list is non-empty.
struct ExperimentSpec {
  Scene scene;
  std::vector<Target> targets;
  TargetDraw draw;
  double snr_db = 25.0;
  std::vector<double> fractions{0.5};
  std::vector<Scheme> schemes{Scheme::kPerAntenna};
  std::vector<Waveform> waveforms{Waveform::kHadamard,
                                  Waveform::kGaussianOrthogonal};
  int trials = 50;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  SolverOptions solver;
  double angle_lo = -90.0;
  double angle_hi = 90.0;
  double angle_step = 0.05;
  double speed_lo = 150.0;
  double speed_hi = 450.0;
  double speed_step = 5.0;
  std::vector<double> separations{0.2, 0.3, 0.4, 0.5, 0.7, 1.0};
  double epsilon = 0.1;

  void validate() const;
};

/// Per-trial record shared by the experiment CSV writers; fields that do
/// not apply to an experiment stay at their defaults.
struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  Waveform waveform = Waveform::kHadamard;
  double p = 1.0;
  std::vector<double> rel_error_per_pulse;
  double m1 = 0.0;
  double m2 = 0.0;
  std::vector<double> doa_estimates;
  bool success = false;
  double wall_ms = 0.0;
};

struct CcdfSample {
  std::string case_name;
  int num_rx = 0;
  int num_samples = 0;
  int k = 0;
  Waveform waveform = Waveform::kHadamard;
  int trial = 0;
  std::uint64_t seed = 0;
  double m1 = 0.0;
  double m2 = 0.0;
  double mu1 = 0.0;
  double mu2 = 0.0;
};

struct CcdfResult {
  std::vector<CcdfSample> samples;

  std::vector<double> collect_m1(const std::string& case_name, int k,
                                 Waveform w) const;
  std::vector<double> collect_m2(const std::string& case_name, int k,
                                 Waveform w) const;
};

/// Singular-vector maxima statistics over the three array/sample-size
/// cases (I: M_r=40 L=128, II: M_r=1000 L=128, III: M_r=40 L=1024),
/// K in {2, 10}, each configured waveform, spec.trials trials.
/// Emits ccdf_samples.csv and ccdf_curves.csv.
CcdfResult run_ccdf_experiment(const ExperimentSpec& spec);

struct ScalingResult {
  std::vector<std::pair<double, double>> m1_points;  ///< (M_r, 0.99-quantile)
  std::vector<std::pair<double, double>> m2_points;  ///< (L, 0.99-quantile)
  MuBFit m1_fit;
  MuBFit m2_fit;
};

/// Fits the 1/sqrt(n) law of the singular-vector bounds: m1 over
/// M_r in {40, 100, 400, 1000} at L=128 and m2 over L in {128, ..., 1024}
/// at M_r=40; Gaussian-orthogonal waveform, K=2, 0.99 quantiles over
/// spec.trials trials per point. Emits scaling_points.csv and
/// scaling_fit.csv.
ScalingResult run_scaling_experiment(const ExperimentSpec& spec);

struct RelativeErrorCell {
  Waveform waveform = Waveform::kHadamard;
  double p = 1.0;
  double mean_rel_error = 0.0;
  std::vector<double> errors;
};

struct RelativeErrorResult {
  std::vector<RelativeErrorCell> cells;

  double mean(Waveform w, double p) const;
};

/// Completion relative error ||Z_1 - X_1||_F / ||Z_1||_F per (waveform, p)
/// over spec.trials trials; K-target scenes drawn per trial, noise at
/// spec.snr_db, constraint radius from choose_delta. Emits
/// relative_error_trials.csv and relative_error_summary.csv.
RelativeErrorResult run_relative_error_experiment(const ExperimentSpec& spec);

struct ResolutionCell {
  Waveform waveform = Waveform::kHadamard;
  double p = 1.0;
  double d_theta = 0.0;
  double probability = 0.0;
};

struct ResolutionResult {
  std::vector<ResolutionCell> cells;

  double probability(Waveform w, double p, double d_theta) const;
};

/// Probability of DOA resolution per (waveform, p, d_theta): two targets
/// at exactly d_theta separation inside the draw angle range, speeds
/// fixed at 150 and 400 m/s, full completion + MUSIC chain per trial,
/// success when every matched angle lies within epsilon d_theta. Emits
/// resolution_trials.csv and resolution_summary.csv.
ResolutionResult run_resolution_experiment(const ExperimentSpec& spec);

namespace csv {

/// Shortest round-trip decimal representation, locale-independent.
std::string fmt(double v);

/// Opens a CSV for writing, emitting the provenance comment line and the
/// column header. Throws IoError with path context.
std::ofstream open(const std::filesystem::path& path,
                   std::string_view columns, std::string_view provenance);

}  // namespace csv

/// FNV-1a 64-bit, used for config provenance hashes in CSV comments.
std::uint64_t fnv1a(std::string_view bytes);

/// Provenance comment ("# config_hash=... seed=... version=...").
std::string provenance_line(const ExperimentSpec& spec);

}  // namespace rmc
