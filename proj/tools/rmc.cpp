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

// Command line front end. Subcommands:
//   synth       write the pulse matrices of one coherent processing interval
//   complete    run a single masked-completion trial with optional trace
//   estimate    full chain: synth -> sample -> complete -> MUSIC report
//   diagnose    incoherence statistics of the synthesized data matrix
//   experiment  Monte Carlo families: ccdf, scaling, relative-error, resolution
// Exit codes: 0 success, 1 configuration error, 2 runtime error.

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "rmc/completion.hpp"
#include "rmc/estimation.hpp"
#include "rmc/harness.hpp"
#include "rmc/incoherence.hpp"
#include "rmc/json_io.hpp"
#include "rmc/sampling.hpp"
#include "rmc/synth.hpp"

namespace {

using rmc::ExperimentSpec;

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> trials;
  std::vector<double> p;
  std::optional<std::string> waveform;
  std::optional<std::string> scheme;
  int threads = 0;
  bool trace = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags* f) {
  cmd->add_option("--config", f->config, "JSON config mirroring the spec")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", f->seed, "master seed override");
  cmd->add_option("--out", f->out, "output directory");
  cmd->add_option("--trials", f->trials, "Monte Carlo trial count");
  cmd->add_option("--p", f->p, "observed fraction(s) in (0, 1]");
  cmd->add_option("--waveform", f->waveform,
                  "waveform kind: hadamard | gaussian");
  cmd->add_option("--scheme", f->scheme,
                  "sampling scheme: per-antenna | global-uniform");
  cmd->add_option("--threads", f->threads, "worker thread count (0 = auto)");
}

/// Loads the config (or defaults), remembering whether the file pinned Q so
/// subcommands can apply their own pulse-count default.
ExperimentSpec load_with_flags(const CommonFlags& f, bool* q_pinned) {
  *q_pinned = false;
  ExperimentSpec spec;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw rmc::ConfigError(std::string("config parse: ") + e.what());
    }
    *q_pinned = j.contains("scene") && j.at("scene").contains("num_pulses");
    spec = rmc::spec_from_json(j);
  }
  if (f.seed) spec.seed = *f.seed;
  if (f.out) spec.out_dir = *f.out;
  if (f.trials) spec.trials = *f.trials;
  if (!f.p.empty()) spec.fractions = f.p;
  if (f.waveform) {
    const rmc::Waveform w = rmc::waveform_from_name(*f.waveform);
    spec.scene.waveform_kind = w;
    spec.waveforms = {w};
  }
  if (f.scheme) spec.schemes = {rmc::scheme_from_name(*f.scheme)};
#ifdef _OPENMP
  if (f.threads > 0) omp_set_num_threads(f.threads);
#endif
  return spec;
}

std::vector<rmc::Target> pick_targets(const ExperimentSpec& spec) {
  if (!spec.targets.empty()) return spec.targets;
  rmc::rng::SplitMix64 gen(rmc::rng::derive(spec.seed, 1));
  return rmc::draw_targets(spec.draw, gen);
}

std::filesystem::path ensure_out_dir(const ExperimentSpec& spec) {
  const std::filesystem::path dir(spec.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw rmc::IoError("cannot create output directory: " + spec.out_dir);
  }
  return dir;
}

void write_targets_json(const std::filesystem::path& path,
                        const std::vector<rmc::Target>& targets) {
  nlohmann::json arr = nlohmann::json::array();
  for (const rmc::Target& t : targets) arr.push_back(rmc::target_to_json(t));
  std::ofstream f(path);
  if (!f) throw rmc::IoError("cannot write " + path.string());
  f << nlohmann::json{{"targets", arr}}.dump(2) << '\n';
}

int run_synth(const ExperimentSpec& spec) {
  spec.validate();
  const auto dir = ensure_out_dir(spec);
  const auto targets = pick_targets(spec);
  const Eigen::MatrixXcd wf = rmc::make_waveforms(spec.scene);
  write_targets_json(dir / "targets.json", targets);
  std::printf("wrote %s\n", (dir / "targets.json").c_str());
  for (const rmc::Pulse& z : rmc::synthesize_cpi(spec.scene, wf, targets)) {
    char name[32];
    std::snprintf(name, sizeof name, "pulse_%02d.rpm", z.pulse_index);
    rmc::write_pulse_file(dir / name, z, false);
    std::printf("wrote %s\n", (dir / name).c_str());
    if (std::isfinite(spec.snr_db)) {
      const rmc::NoisyPulse noisy = rmc::add_noise(
          z, spec.snr_db, rmc::rng::derive(spec.seed, 3, z.pulse_index));
      std::snprintf(name, sizeof name, "pulse_%02d_noisy.rpm",
                    z.pulse_index);
      rmc::write_pulse_file(dir / name, noisy.pulse, false);
      std::printf("wrote %s (sigma=%.6g)\n", (dir / name).c_str(),
                  noisy.sigma);
    }
  }
  return 0;
}

int run_complete(ExperimentSpec spec, bool trace) {
  spec.solver.record_trace = spec.solver.record_trace || trace;
  spec.validate();
  const auto dir = ensure_out_dir(spec);
  const auto targets = pick_targets(spec);
  const Eigen::MatrixXcd wf = rmc::make_waveforms(spec.scene);
  const rmc::Pulse truth = rmc::synthesize_pulse(spec.scene, wf, targets, 1);

  Eigen::MatrixXcd y = truth.entries;
  double sigma = 0.0;
  if (std::isfinite(spec.snr_db)) {
    sigma = rmc::noise_sigma(truth.entries, spec.snr_db);
    rmc::rng::SplitMix64 gen(rmc::rng::derive(spec.seed, 3, 1));
    y = rmc::add_noise(truth.entries, sigma, gen);
  }
  const double p = spec.fractions.front();
  const rmc::Mask mask =
      rmc::make_mask(spec.scene.num_rx, spec.scene.num_samples, p,
                     spec.schemes.front(), rmc::rng::derive(spec.seed, 4, 1));
  rmc::CompletionProblem problem;
  problem.observations = rmc::observe(y, mask);
  problem.delta = sigma > 0.0 ? rmc::choose_delta(sigma, mask.count()) : 0.0;
  problem.options = spec.solver;
  const rmc::CompletionResult res = rmc::complete(problem);

  const double rel = (res.estimate - truth.entries).norm() /
                     truth.entries.norm();
  rmc::write_pulse_file(dir / "estimate.rpm",
                        rmc::Pulse{res.estimate, 1, sigma > 0.0}, false);
  nlohmann::json report{{"relative_error", rel},
                        {"residual", res.residual},
                        {"delta", problem.delta},
                        {"nuclear_norm", res.nuclear_norm},
                        {"iterations", res.iterations},
                        {"converged", res.converged},
                        {"p", p},
                        {"observed", mask.count()},
                        {"waveform", rmc::to_string(spec.scene.waveform_kind)},
                        {"scheme", rmc::to_string(spec.schemes.front())},
                        {"seed", spec.seed}};
  std::ofstream(dir / "completion.json") << report.dump(2) << '\n';
  if (spec.solver.record_trace) {
    auto f = rmc::csv::open(dir / "trace.csv",
                            "iteration,stage,mu,objective,residual",
                            rmc::provenance_line(spec));
    for (const rmc::TraceRow& row : res.trace) {
      f << row.iteration << ',' << row.stage << ',' << rmc::csv::fmt(row.mu)
        << ',' << rmc::csv::fmt(row.objective) << ','
        << rmc::csv::fmt(row.residual) << '\n';
    }
    std::printf("wrote %s\n", (dir / "trace.csv").c_str());
  }
  std::printf(
      "completion: p=%g observed=%zu iterations=%d converged=%d "
      "relative_error=%.6g\n",
      p, mask.count(), res.iterations, int(res.converged), rel);
  std::printf("wrote %s\n", (dir / "completion.json").c_str());
  return 0;
}

int run_estimate(ExperimentSpec spec) {
  spec.validate();
  const auto dir = ensure_out_dir(spec);
  const auto targets = pick_targets(spec);
  const Eigen::MatrixXcd wf = rmc::make_waveforms(spec.scene);
  const double p = spec.fractions.front();
  const rmc::Scheme scheme = spec.schemes.front();

  std::vector<rmc::MatchedPulse> matched;
  for (const rmc::Pulse& z : rmc::synthesize_cpi(spec.scene, wf, targets)) {
    Eigen::MatrixXcd y = z.entries;
    double sigma = 0.0;
    if (std::isfinite(spec.snr_db)) {
      sigma = rmc::noise_sigma(z.entries, spec.snr_db);
      rmc::rng::SplitMix64 gen(rmc::rng::derive(spec.seed, 3, z.pulse_index));
      y = rmc::add_noise(z.entries, sigma, gen);
    }
    const rmc::Mask mask = rmc::make_mask(
        spec.scene.num_rx, spec.scene.num_samples, p, scheme,
        rmc::rng::derive(spec.seed, 4, z.pulse_index));
    rmc::CompletionProblem problem;
    problem.observations = rmc::observe(y, mask);
    problem.delta =
        sigma > 0.0 ? rmc::choose_delta(sigma, mask.count()) : 0.0;
    problem.options = spec.solver;
    const rmc::CompletionResult res = rmc::complete(problem);
    matched.push_back(
        rmc::matched_filter(res.estimate, z.pulse_index, wf));
  }
  const Eigen::MatrixXcd stacked =
      rmc::stack_and_reshape(matched, spec.scene.num_pulses,
                             spec.scene.num_tx, spec.scene.num_rx);
  const Eigen::MatrixXcd cov = rmc::sample_covariance(stacked);
  rmc::EstimationReport report = rmc::music_spectrum(
      cov, static_cast<int>(targets.size()),
      rmc::make_grid(spec.angle_lo, spec.angle_hi, spec.angle_step),
      rmc::make_grid(spec.speed_lo, spec.speed_hi, spec.speed_step),
      spec.scene);

  // Score against the known truth when at least two targets exist.
  std::vector<double> truth_angles;
  for (const rmc::Target& t : targets) truth_angles.push_back(t.angle_deg);
  if (targets.size() >= 2 && report.peaks.size() == targets.size()) {
    double d_min = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < truth_angles.size(); ++a) {
      for (std::size_t b = a + 1; b < truth_angles.size(); ++b) {
        d_min = std::min(d_min,
                         std::abs(truth_angles[a] - truth_angles[b]));
      }
    }
    report.success = rmc::resolution_success(
        rmc::peak_angles(report), truth_angles, d_min, spec.epsilon);
  }

  const std::string prov = rmc::provenance_line(spec);
  {
    auto f = rmc::csv::open(dir / "spectrum.csv", "angle,speed,value", prov);
    for (std::size_t a = 0; a < report.angle_grid.size(); ++a) {
      for (std::size_t s = 0; s < report.speed_grid.size(); ++s) {
        f << rmc::csv::fmt(report.angle_grid[a]) << ','
          << rmc::csv::fmt(report.speed_grid[s]) << ','
          << rmc::csv::fmt(report.spectrum(static_cast<Eigen::Index>(a),
                                           static_cast<Eigen::Index>(s)))
          << '\n';
      }
    }
  }
  {
    auto f = rmc::csv::open(dir / "peaks.csv", "angle,speed,value", prov);
    for (const rmc::Peak& pk : report.peaks) {
      f << rmc::csv::fmt(pk.angle_deg) << ',' << rmc::csv::fmt(pk.speed_mps)
        << ',' << rmc::csv::fmt(pk.value) << '\n';
    }
  }
  std::ofstream(dir / "report.json") << rmc::report_to_json(report).dump(2)
                                     << '\n';
  write_targets_json(dir / "targets.json", targets);
  for (const rmc::Peak& pk : report.peaks) {
    std::printf("peak: angle=%.4f speed=%.2f value=%.6g\n", pk.angle_deg,
                pk.speed_mps, pk.value);
  }
  std::printf("wrote %s, peaks.csv, report.json, targets.json\n",
              (dir / "spectrum.csv").c_str());
  return 0;
}

int run_diagnose(const ExperimentSpec& spec) {
  spec.validate();
  const auto dir = ensure_out_dir(spec);
  const Eigen::MatrixXcd wf = rmc::make_waveforms(spec.scene);
  auto f = rmc::csv::open(dir / "incoherence.csv",
                          "trial,seed,m1,m2,mu1,mu2,mu",
                          rmc::provenance_line(spec));
  std::vector<double> m1s;
  std::vector<double> m2s;
  for (int t = 0; t < spec.trials; ++t) {
    const std::uint64_t seed = rmc::rng::derive(spec.seed, 1, t);
    rmc::rng::SplitMix64 gen(seed);
    const auto targets =
        spec.targets.empty() ? rmc::draw_targets(spec.draw, gen)
                             : spec.targets;
    const rmc::Pulse z = rmc::synthesize_pulse(spec.scene, wf, targets, 1);
    const rmc::IncoherenceReport rep = rmc::strong_incoherence_mu(
        z.entries, static_cast<int>(targets.size()));
    f << t << ',' << seed << ',' << rmc::csv::fmt(rep.m1) << ','
      << rmc::csv::fmt(rep.m2) << ',' << rmc::csv::fmt(rep.mu1) << ','
      << rmc::csv::fmt(rep.mu2) << ',' << rmc::csv::fmt(rep.mu) << '\n';
    m1s.push_back(rep.m1);
    m2s.push_back(rep.m2);
  }
  std::printf("diagnose: trials=%d median m1=%.6g median m2=%.6g\n",
              spec.trials, rmc::empirical_quantile(m1s, 0.5),
              rmc::empirical_quantile(m2s, 0.5));
  std::printf("wrote %s\n", (dir / "incoherence.csv").c_str());
  return 0;
}

int run_experiment(const std::string& name, const ExperimentSpec& spec) {
  if (name == "ccdf") {
    rmc::run_ccdf_experiment(spec);
  } else if (name == "scaling") {
    const rmc::ScalingResult res = rmc::run_scaling_experiment(spec);
    std::printf("scaling: mu_b(m1)=%.4f mu_b(m2)=%.4f\n", res.m1_fit.mu_b,
                res.m2_fit.mu_b);
  } else if (name == "relative-error") {
    const rmc::RelativeErrorResult res =
        rmc::run_relative_error_experiment(spec);
    for (const rmc::RelativeErrorCell& c : res.cells) {
      std::printf("relative-error: waveform=%s p=%g mean=%.6g\n",
                  std::string(rmc::to_string(c.waveform)).c_str(), c.p,
                  c.mean_rel_error);
    }
  } else if (name == "resolution") {
    const rmc::ResolutionResult res = rmc::run_resolution_experiment(spec);
    for (const rmc::ResolutionCell& c : res.cells) {
      std::printf(
          "resolution: waveform=%s p=%g d_theta=%g probability=%.3f\n",
          std::string(rmc::to_string(c.waveform)).c_str(), c.p, c.d_theta,
          c.probability);
    }
  } else {
    throw rmc::ConfigError(
        "unknown experiment '" + name +
        "' (expected ccdf, scaling, relative-error, or resolution)");
  }
  std::printf("wrote CSVs under %s\n", spec.out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MIMO radar matrix completion toolkit"};
  app.require_subcommand(1);

  CommonFlags synth_f, complete_f, estimate_f, diagnose_f, exp_f;
  auto* synth = app.add_subcommand(
      "synth", "synthesize the pulse matrices of one CPI");
  add_common_flags(synth, &synth_f);
  auto* complete = app.add_subcommand(
      "complete", "run one masked completion trial");
  add_common_flags(complete, &complete_f);
  complete->add_flag("--trace", complete_f.trace,
                     "record the solver trace to trace.csv");
  auto* estimate = app.add_subcommand(
      "estimate", "synth, sample, complete, and run MUSIC");
  add_common_flags(estimate, &estimate_f);
  auto* diagnose = app.add_subcommand(
      "diagnose", "incoherence statistics of synthesized data");
  add_common_flags(diagnose, &diagnose_f);
  auto* experiment = app.add_subcommand(
      "experiment", "Monte Carlo experiment families");
  std::string exp_name;
  experiment
      ->add_option("name", exp_name,
                   "ccdf | scaling | relative-error | resolution")
      ->required();
  add_common_flags(experiment, &exp_f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    bool q_pinned = false;
    if (synth->parsed()) {
      return run_synth(load_with_flags(synth_f, &q_pinned));
    }
    if (complete->parsed()) {
      return run_complete(load_with_flags(complete_f, &q_pinned),
                          complete_f.trace);
    }
    if (estimate->parsed()) {
      ExperimentSpec spec = load_with_flags(estimate_f, &q_pinned);
      if (!q_pinned) spec.scene.num_pulses = 5;
      return run_estimate(std::move(spec));
    }
    if (diagnose->parsed()) {
      return run_diagnose(load_with_flags(diagnose_f, &q_pinned));
    }
    if (experiment->parsed()) {
      ExperimentSpec spec = load_with_flags(exp_f, &q_pinned);
      const bool estimation_family =
          exp_name == "relative-error" || exp_name == "resolution";
      if (estimation_family && !q_pinned) spec.scene.num_pulses = 5;
      return run_experiment(exp_name, spec);
    }
  } catch (const rmc::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
