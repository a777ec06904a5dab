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

// Parallel kernels vs the serial reference, plus the two SVT backends.

#include <benchmark/benchmark.h>

#include <vector>

#include "rmc/completion.hpp"
#include "rmc/estimation.hpp"
#include "rmc/reference.hpp"
#include "rmc/sampling.hpp"
#include "rmc/scene.hpp"
#include "rmc/synth.hpp"

namespace {

rmc::Scene bench_scene() {
  rmc::Scene s;
  s.rng_seed = 2026;
  return s;  // M_t=20, M_r=40, L=128, the numerical setup of the study
}

std::vector<rmc::Target> bench_targets() {
  return {rmc::Target{-10.0, 150.0, {0.9, 0.2}},
          rmc::Target{10.0, 400.0, {-0.4, 1.1}}};
}

void bm_synthesize(benchmark::State& state) {
  const rmc::Scene s = bench_scene();
  const Eigen::MatrixXcd wf = rmc::make_waveforms(s);
  const auto targets = bench_targets();
  for (auto _ : state) {
    benchmark::DoNotOptimize(rmc::synthesize_pulse(s, wf, targets, 1));
  }
}
BENCHMARK(bm_synthesize);

void bm_synthesize_reference(benchmark::State& state) {
  const rmc::Scene s = bench_scene();
  const Eigen::MatrixXcd wf = rmc::make_waveforms(s);
  const auto targets = bench_targets();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        rmc::reference::synthesize_pulse(s, wf, targets, 1));
  }
}
BENCHMARK(bm_synthesize_reference);

Eigen::MatrixXcd bench_covariance(const rmc::Scene& s) {
  const Eigen::MatrixXcd wf = rmc::make_waveforms(s);
  std::vector<rmc::MatchedPulse> matched;
  for (const rmc::Pulse& z :
       rmc::synthesize_cpi(s, wf, bench_targets())) {
    matched.push_back(rmc::matched_filter(z, wf));
  }
  return rmc::sample_covariance(rmc::stack_and_reshape(
      matched, s.num_pulses, s.num_tx, s.num_rx));
}

void bm_music(benchmark::State& state) {
  rmc::Scene s = bench_scene();
  s.num_pulses = 5;
  const Eigen::MatrixXcd cov = bench_covariance(s);
  const auto angles = rmc::make_grid(-20.0, 20.0, 0.05);
  const std::vector<double> speeds{150.0, 400.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        rmc::music_spectrum(cov, 2, angles, speeds, s));
  }
}
BENCHMARK(bm_music);

void bm_music_reference(benchmark::State& state) {
  rmc::Scene s = bench_scene();
  s.num_pulses = 5;
  const Eigen::MatrixXcd cov = bench_covariance(s);
  const auto angles = rmc::make_grid(-20.0, 20.0, 0.05);
  const std::vector<double> speeds{150.0, 400.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        rmc::reference::music_spectrum(cov, 2, angles, speeds, s));
  }
}
BENCHMARK(bm_music_reference);

rmc::CompletionProblem bench_problem(rmc::SvtBackend backend) {
  const rmc::Scene s = bench_scene();
  const Eigen::MatrixXcd wf = rmc::make_waveforms(s);
  const rmc::Pulse z = rmc::synthesize_pulse(s, wf, bench_targets(), 1);
  const rmc::Mask mask = rmc::make_mask(s.num_rx, s.num_samples, 0.5,
                                        rmc::Scheme::kGlobalUniform, 7);
  rmc::CompletionProblem problem;
  problem.observations = rmc::observe(z.entries, mask);
  problem.delta = 0.0;
  problem.options.backend = backend;
  return problem;
}

void bm_complete_exact(benchmark::State& state) {
  const rmc::CompletionProblem problem = bench_problem(rmc::SvtBackend::kExact);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rmc::complete(problem));
  }
}
BENCHMARK(bm_complete_exact)->Unit(benchmark::kMillisecond);

void bm_complete_gram(benchmark::State& state) {
  const rmc::CompletionProblem problem = bench_problem(rmc::SvtBackend::kGram);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rmc::complete(problem));
  }
}
BENCHMARK(bm_complete_gram)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
