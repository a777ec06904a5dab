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

// Exit-gate checks. Each check prints exactly one [PASS]/[FAIL] line with its
// measured value and wall time; the binary exits nonzero if any check fails
// or exceeds its runtime budget. Checks use frozen seeds and are
// deterministic on a given platform.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "rmc/completion.hpp"
#include "rmc/estimation.hpp"
#include "rmc/harness.hpp"
#include "rmc/incoherence.hpp"
#include "rmc/linalg.hpp"
#include "rmc/sampling.hpp"
#include "rmc/synth.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int g_failures = 0;

void run_check(int index, const char* name, double budget_seconds,
               const std::function<Outcome()>& body) {
  const auto t0 = clock_type::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double seconds =
      std::chrono::duration<double>(clock_type::now() - t0).count();
  const bool in_budget = seconds < budget_seconds;
  const bool pass = out.pass && in_budget;
  if (!pass) ++g_failures;
  std::printf("[%s] %d. %s: %s (%.1f s, budget %.0f s%s)\n",
              pass ? "PASS" : "FAIL", index, name, out.detail.c_str(),
              seconds, budget_seconds, in_budget ? "" : ", OVER BUDGET");
  std::fflush(stdout);
}

std::filesystem::path fresh_out(const char* name) {
  const auto dir =
      std::filesystem::temp_directory_path() / "rmc_acceptance" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// Angles drawn uniformly with a minimum pairwise separation, the speeds
// fixed at the known 150/400 m/s pair, betas complex Gaussian.
std::vector<rmc::Target> draw_two_known_speed_targets(
    rmc::rng::SplitMix64& gen, double lo, double hi, double min_sep) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const double a1 = gen.uniform(lo, hi);
    const double a2 = gen.uniform(lo, hi);
    if (std::abs(a1 - a2) < min_sep) continue;
    return {rmc::Target{a1, 150.0, gen.complex_gaussian()},
            rmc::Target{a2, 400.0, gen.complex_gaussian()}};
  }
  throw rmc::DomainError("could not draw separated targets");
}

Outcome check_rank_structure() {
  rmc::Scene scene;  // M_t=20, M_r=40, L=128, Q=10
  const Eigen::MatrixXcd wf = rmc::make_waveforms(scene);
  rmc::TargetDraw draw;
  draw.angle_lo = -60.0;
  draw.angle_hi = 60.0;
  draw.min_separation = 0.5;
  double worst_tail = 0.0;
  int scenes = 0;
  for (int k : {1, 2, 5, 10}) {
    draw.count = k;
    for (int t = 0; t < 25; ++t) {
      rmc::rng::SplitMix64 gen(rmc::rng::derive(0xC1, k, t));
      const auto targets = rmc::draw_targets(draw, gen);
      const int q = 1 + (t % scene.num_pulses);
      const rmc::Pulse z = rmc::synthesize_pulse(scene, wf, targets, q);
      const Eigen::VectorXd sv = rmc::linalg::singular_values(z.entries);
      const double tail = sv(k) / sv(0);
      worst_tail = std::max(worst_tail, tail);
      if (tail >= 1e-8) {
        return {false, "sigma_{K+1}/sigma_1 = " + std::to_string(tail) +
                           " at K=" + std::to_string(k)};
      }
      ++scenes;
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "%d scenes, worst sigma_{K+1}/sigma_1 = %.2e < 1e-8", scenes,
                worst_tail);
  return {true, buf};
}

Outcome check_noiseless_completion() {
  rmc::Scene scene;
  scene.waveform_kind = rmc::Waveform::kHadamard;
  const Eigen::MatrixXcd wf = rmc::make_waveforms(scene);
  rmc::TargetDraw draw;  // K=2 over the full angle/speed ranges
  int ok = 0;
  std::vector<double> errors;
  for (int t = 0; t < 50; ++t) {
    rmc::rng::SplitMix64 gen(rmc::rng::derive(0xC2, 1, t));
    const auto targets = rmc::draw_targets(draw, gen);
    const rmc::Pulse z = rmc::synthesize_pulse(scene, wf, targets, 1);
    const rmc::Mask mask =
        rmc::make_mask(scene.num_rx, scene.num_samples, 0.5,
                       rmc::Scheme::kGlobalUniform, rmc::rng::derive(0xC2, 4, t));
    rmc::CompletionProblem problem;
    problem.observations = rmc::observe(z.entries, mask);
    problem.delta = 0.0;
    const rmc::CompletionResult res = rmc::complete(problem);
    const double rel =
        (res.estimate - z.entries).norm() / z.entries.norm();
    errors.push_back(rel);
    if (rel <= 1e-4) ++ok;
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "%d/50 trials at rel <= 1e-4 (median %.2e)",
                ok, rmc::empirical_quantile(errors, 0.5));
  return {ok >= 48, buf};
}

Outcome check_noisy_plateau() {
  rmc::ExperimentSpec spec;
  spec.trials = 50;
  spec.snr_db = 25.0;
  spec.fractions = {0.3, 0.5};
  spec.waveforms = {rmc::Waveform::kHadamard,
                    rmc::Waveform::kGaussianOrthogonal};
  spec.seed = 0xC3;
  spec.out_dir = fresh_out("relative_error").string();
  const rmc::RelativeErrorResult res =
      rmc::run_relative_error_experiment(spec);
  const double ref = std::pow(10.0, -25.0 / 20.0);
  const double had5 = res.mean(rmc::Waveform::kHadamard, 0.5);
  const double gau5 = res.mean(rmc::Waveform::kGaussianOrthogonal, 0.5);
  const double had3 = res.mean(rmc::Waveform::kHadamard, 0.3);
  const double gau3 = res.mean(rmc::Waveform::kGaussianOrthogonal, 0.3);
  const bool in_band = had5 >= 0.5 * ref && had5 <= 2.0 * ref &&
                       gau5 >= 0.5 * ref && gau5 <= 2.0 * ref;
  const bool ordered = gau3 <= had3;
  char buf[192];
  std::snprintf(buf, sizeof buf,
                "p=0.5 means (had %.4f, gauss %.4f) vs band [%.4f, %.4f]; "
                "p=0.3 gauss %.4f <= had %.4f: %s",
                had5, gau5, 0.5 * ref, 2.0 * ref, gau3, had3,
                ordered ? "yes" : "no");
  return {in_band && ordered, buf};
}

Outcome check_ccdf_ordering() {
  rmc::ExperimentSpec spec;
  spec.trials = 300;  // the study's per-case count
  spec.seed = 0xC4;
  spec.out_dir = fresh_out("ccdf").string();
  const rmc::CcdfResult res = rmc::run_ccdf_experiment(spec);
  const auto thresholds = rmc::make_grid(0.0, 1.0, 0.005);
  double worst_gap = 1.0;  // min over thresholds of ccdf_I - ccdf_II
  double worst_shift = 0.0;
  for (rmc::Waveform w : spec.waveforms) {
    for (int k : {2, 10}) {
      const auto m1_i = rmc::empirical_ccdf(res.collect_m1("I", k, w),
                                            thresholds);
      const auto m1_ii = rmc::empirical_ccdf(res.collect_m1("II", k, w),
                                             thresholds);
      for (std::size_t i = 0; i < thresholds.size(); ++i) {
        worst_gap = std::min(worst_gap, m1_i[i] - m1_ii[i]);
        if (m1_ii[i] > m1_i[i]) {
          char buf[128];
          std::snprintf(buf, sizeof buf,
                        "case II m1 CCDF above case I at threshold %.3f "
                        "(K=%d)",
                        thresholds[i], k);
          return {false, buf};
        }
      }
      const double med_i =
          rmc::empirical_quantile(res.collect_m2("I", k, w), 0.5);
      const double med_ii =
          rmc::empirical_quantile(res.collect_m2("II", k, w), 0.5);
      const double shift = std::abs(med_ii - med_i) / med_i;
      worst_shift = std::max(worst_shift, shift);
      if (shift >= 0.2) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "m2 median shift %.1f%% at K=%d",
                      100.0 * shift, k);
        return {false, buf};
      }
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "300 trials/case: m1 CCDF(II) <= CCDF(I) everywhere "
                "(min gap %.3f), worst m2 median shift %.1f%% < 20%%",
                worst_gap, 100.0 * worst_shift);
  return {true, buf};
}

Outcome check_mu_b_scaling() {
  rmc::ExperimentSpec spec;
  // The 0.99 quantile rests on the few largest samples, so the fitted
  // constants wobble by about +-0.07 across seeds at 2000 trials (and much
  // more below that). 2000 trials keeps the m1 fit, whose true value of
  // about 3.07 sits at the upper band edge, from flipping on quantile
  // noise while staying far inside the wall budget.
  spec.trials = 2000;
  spec.seed = 0xC5;
  spec.waveforms = {rmc::Waveform::kGaussianOrthogonal};
  spec.out_dir = fresh_out("scaling").string();
  const rmc::ScalingResult res = rmc::run_scaling_experiment(spec);
  const bool m1_ok = res.m1_fit.mu_b >= 1.7 && res.m1_fit.mu_b <= 3.1;
  const bool m2_ok = res.m2_fit.mu_b >= 4.5 && res.m2_fit.mu_b <= 8.5;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "0.99-quantile fits: mu_B(m1) = %.2f vs [1.7, 3.1] %s; "
                "mu_B(m2) = %.2f vs [4.5, 8.5] %s",
                res.m1_fit.mu_b, m1_ok ? "ok" : "OUT",
                res.m2_fit.mu_b, m2_ok ? "ok" : "OUT");
  return {m1_ok && m2_ok, buf};
}

Outcome check_end_to_end_estimation() {
  rmc::Scene scene;
  scene.num_pulses = 5;
  scene.waveform_kind = rmc::Waveform::kHadamard;
  const Eigen::MatrixXcd wf = rmc::make_waveforms(scene);
  const auto angle_grid = rmc::make_grid(-21.0, 21.0, 0.02);
  const std::vector<double> speed_grid{150.0, 400.0};

  const auto peaks_for = [&](const std::vector<rmc::MatchedPulse>& matched) {
    const Eigen::MatrixXcd stacked = rmc::stack_and_reshape(
        matched, scene.num_pulses, scene.num_tx, scene.num_rx);
    const rmc::EstimationReport rep =
        rmc::music_spectrum(rmc::sample_covariance(stacked), 2, angle_grid,
                            speed_grid, scene);
    return rmc::peak_angles(rep);
  };
  const auto score = [](std::vector<double> est, std::vector<double> truth) {
    std::sort(est.begin(), est.end());
    std::sort(truth.begin(), truth.end());
    return est.size() == 2 && std::abs(est[0] - truth[0]) <= 0.05 &&
           std::abs(est[1] - truth[1]) <= 0.05;
  };

  int full_ok = 0;
  int completed_ok = 0;
  for (int t = 0; t < 100; ++t) {
    rmc::rng::SplitMix64 gen(rmc::rng::derive(0xC6, 1, t));
    const auto targets =
        draw_two_known_speed_targets(gen, -20.0, 20.0, 2.0);
    const std::vector<double> truth{targets[0].angle_deg,
                                    targets[1].angle_deg};
    const auto pulses = rmc::synthesize_cpi(scene, wf, targets);

    std::vector<rmc::MatchedPulse> full;
    std::vector<rmc::MatchedPulse> completed;
    for (const rmc::Pulse& z : pulses) {
      full.push_back(rmc::matched_filter(z, wf));
      const rmc::Mask mask = rmc::make_mask(
          scene.num_rx, scene.num_samples, 0.5, rmc::Scheme::kPerAntenna,
          rmc::rng::derive(rmc::rng::derive(0xC6, 4, t), z.pulse_index));
      rmc::CompletionProblem problem;
      problem.observations = rmc::observe(z.entries, mask);
      problem.delta = 0.0;
      const rmc::CompletionResult res = rmc::complete(problem);
      completed.push_back(
          rmc::matched_filter(res.estimate, z.pulse_index, wf));
    }
    if (score(peaks_for(full), truth)) ++full_ok;
    if (score(peaks_for(completed), truth)) ++completed_ok;
  }
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "full data %d/100 (need 100) at <= 0.05 deg; completed "
                "p=0.5 %d/100 (need >= 95)",
                full_ok, completed_ok);
  return {full_ok == 100 && completed_ok >= 95, buf};
}

Outcome check_resolution_ordering() {
  rmc::ExperimentSpec spec;
  spec.trials = 50;
  spec.snr_db = 25.0;
  spec.fractions = {0.3, 0.5};
  spec.seed = 0xC7;
  spec.scene.num_pulses = 5;
  spec.draw.angle_lo = -20.0;
  spec.draw.angle_hi = 20.0;
  spec.out_dir = fresh_out("resolution").string();
  const rmc::ResolutionResult res = rmc::run_resolution_experiment(spec);
  // At this SNR the success tolerance epsilon * d_theta is tighter than
  // the noise-induced angle error, so the curves can sit at zero and the
  // orderings hold degenerately. Report the largest cell so a flat-zero
  // result is visible in the log rather than a silent pass.
  double max_prob = 0.0;
  for (const rmc::ResolutionCell& c : res.cells) {
    max_prob = std::max(max_prob, c.probability);
  }
  double worst_margin = 1.0;
  double worst_diff = 0.0;
  for (double d : spec.separations) {
    const double g3 =
        res.probability(rmc::Waveform::kGaussianOrthogonal, 0.3, d);
    const double h3 = res.probability(rmc::Waveform::kHadamard, 0.3, d);
    worst_margin = std::min(worst_margin, g3 - h3);
    if (g3 < h3) {
      char buf[128];
      std::snprintf(buf, sizeof buf,
                    "p=0.3 gaussian %.2f < hadamard %.2f at d=%.1f", g3, h3,
                    d);
      return {false, buf};
    }
    const double g5 =
        res.probability(rmc::Waveform::kGaussianOrthogonal, 0.5, d);
    const double h5 = res.probability(rmc::Waveform::kHadamard, 0.5, d);
    worst_diff = std::max(worst_diff, std::abs(g5 - h5));
    if (std::abs(g5 - h5) > 0.15) {
      char buf[128];
      std::snprintf(buf, sizeof buf,
                    "p=0.5 curves differ by %.2f > 0.15 at d=%.1f",
                    std::abs(g5 - h5), d);
      return {false, buf};
    }
  }
  char buf[192];
  std::snprintf(buf, sizeof buf,
                "p=0.3 gaussian >= hadamard at all d (min margin %.2f); "
                "p=0.5 max curve gap %.2f <= 0.15; largest cell "
                "probability %.2f",
                worst_margin, worst_diff, max_prob);
  return {true, buf};
}

Outcome check_formula_unit_values() {
  const auto rel_close = [](double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
  };
  // choose_delta: sigma sqrt(N + sqrt(8N)) at easy closed forms.
  if (!rel_close(rmc::choose_delta(1.0, 2), std::sqrt(6.0))) {
    return {false, "choose_delta(1, 2) != sqrt(6)"};
  }
  if (!rel_close(rmc::choose_delta(0.5, 50), 0.5 * std::sqrt(70.0))) {
    return {false, "choose_delta(0.5, 50) != 0.5 sqrt(70)"};
  }
  // recovery_error_bound: 4 sqrt((2+p) min(n1,n2)/p) delta + 2 delta.
  if (!rel_close(rmc::recovery_error_bound(1.0, 2, 3, 1.0),
                 4.0 * std::sqrt(6.0) + 2.0)) {
    return {false, "recovery_error_bound(1, 2, 3, 1) != 4 sqrt(6) + 2"};
  }
  if (!rel_close(rmc::recovery_error_bound(0.5, 40, 128, 2.0),
                 8.0 * std::sqrt(200.0) + 4.0)) {
    return {false, "recovery_error_bound(0.5, 40, 128, 2) mismatch"};
  }
  // sv_soft_threshold on a diagonal: exact singular value shrinkage.
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2, 2);
  a(0, 0) = 3.0;
  a(1, 1) = 1.0;
  const Eigen::MatrixXcd thr = rmc::sv_soft_threshold(a, 2.0);
  if (std::abs(thr(0, 0) - std::complex<double>(1.0, 0.0)) > 1e-12 ||
      std::abs(thr(1, 1)) > 1e-12) {
    return {false, "sv_soft_threshold(diag(3,1), 2) != diag(1,0)"};
  }
  // strong_incoherence_mu on the all-ones and identity hand cases.
  const rmc::IncoherenceReport ones = rmc::strong_incoherence_mu(
      Eigen::MatrixXcd::Constant(16, 16, 1.0), 1);
  if (!rel_close(ones.mu, 1.0) || !rel_close(ones.m1, 0.25) ||
      !rel_close(ones.m2, 0.25)) {
    return {false, "all-ones 16x16 incoherence mismatch"};
  }
  const rmc::IncoherenceReport eye =
      rmc::strong_incoherence_mu(Eigen::MatrixXcd::Identity(2, 2), 2);
  if (std::abs(eye.mu1) > 1e-12 || !rel_close(eye.mu2, std::sqrt(2.0)) ||
      !rel_close(eye.m1, 1.0)) {
    return {false, "identity 2x2 incoherence mismatch"};
  }
  return {true, "choose_delta, recovery_error_bound, sv_soft_threshold, "
                "strong_incoherence_mu match hand values at 1e-12"};
}

Outcome check_wire_golden() {
  const std::filesystem::path golden(RMC_TEST_DATA_DIR "/golden");
  // The checked-in fragments encode row 2 of pulse 3 of a 4x16 fixture
  // observed with the PerAntenna p=0.25 mask under seed 7.
  Eigen::MatrixXcd fixture(4, 16);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 16; ++c) {
      fixture(r, c) = {r + 0.25 * c, r - 0.125 * c};
    }
  }
  const rmc::Mask mask =
      rmc::make_mask(4, 16, 0.25, rmc::Scheme::kPerAntenna, 7);
  const rmc::ObservationSet obs = rmc::observe(fixture, mask);
  for (const char* name : {"fragment_mode0.bin", "fragment_mode1.bin"}) {
    std::ifstream f(golden / name, std::ios::binary);
    if (!f) return {false, std::string("missing fixture ") + name};
    const std::vector<std::uint8_t> want(
        (std::istreambuf_iterator<char>(f)),
        std::istreambuf_iterator<char>());
    const rmc::FragmentMode mode = name[13] == '0'
                                       ? rmc::FragmentMode::kIndices
                                       : rmc::FragmentMode::kSeed;
    const auto got = rmc::encode_forwarded(obs, 2, 3, mode);
    if (got != want) {
      return {false, std::string(name) + " encoding differs from fixture"};
    }
    const rmc::Fragment frag = rmc::decode_forwarded(want, 16);
    if (frag.cols != obs.cols_by_row[2]) {
      return {false, std::string(name) + " decoded columns differ"};
    }
  }
  // Seed-mode regeneration agrees with explicit indices across fuzz cases.
  rmc::rng::SplitMix64 fuzz(0xC9);
  for (int i = 0; i < 100; ++i) {
    const int rows = 1 + static_cast<int>(fuzz.next_below(6));
    const int cols = 8 + static_cast<int>(fuzz.next_below(57));
    const double p = 0.1 + 0.8 * fuzz.uniform();
    const rmc::Mask m = rmc::make_mask(rows, cols, p,
                                       rmc::Scheme::kPerAntenna, fuzz.next());
    Eigen::MatrixXcd x(rows, cols);
    for (int c = 0; c < cols; ++c) {
      for (int r = 0; r < rows; ++r) x(r, c) = fuzz.complex_gaussian();
    }
    const rmc::ObservationSet o = rmc::observe(x, m);
    for (int r = 0; r < rows; ++r) {
      const auto by_index = rmc::decode_forwarded(
          rmc::encode_forwarded(o, r, 1, rmc::FragmentMode::kIndices), cols);
      const auto by_seed = rmc::decode_forwarded(
          rmc::encode_forwarded(o, r, 1, rmc::FragmentMode::kSeed), cols);
      if (by_index.cols != by_seed.cols ||
          by_index.values != by_seed.values) {
        return {false, "seed-mode fragment differs from index mode at fuzz "
                       "case " + std::to_string(i)};
      }
    }
  }
  return {true, "fixtures byte-exact, 100 seed-vs-index fuzz cases agree"};
}

}  // namespace

int main() {
  std::printf("acceptance checks (frozen seeds, wall budgets enforced)\n");
  run_check(1, "rank structure", 10.0, check_rank_structure);
  run_check(2, "noiseless completion", 120.0, check_noiseless_completion);
  run_check(3, "noisy completion plateau", 600.0, check_noisy_plateau);
  run_check(4, "incoherence CCDF ordering", 900.0, check_ccdf_ordering);
  run_check(5, "mu_B scaling fit", 1800.0, check_mu_b_scaling);
  run_check(6, "end-to-end estimation", 600.0, check_end_to_end_estimation);
  run_check(7, "resolution ordering", 1800.0, check_resolution_ordering);
  run_check(8, "formula unit values", 1.0, check_formula_unit_values);
  run_check(9, "wire-format golden vectors", 1.0, check_wire_golden);
  if (g_failures != 0) {
    std::printf("%d of 9 checks failed\n", g_failures);
    return 1;
  }
  std::printf("all 9 checks passed\n");
  return 0;
}
