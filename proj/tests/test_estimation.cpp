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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rmc/estimation.hpp"
#include "rmc/linalg.hpp"
#include "rmc/reference.hpp"

using rmc::Scene;
using rmc::Target;

namespace {

Scene paper_scene() {
  Scene s;
  s.num_tx = 20;
  s.num_rx = 40;
  s.num_pulses = 5;
  s.num_samples = 128;
  return s;
}

std::vector<rmc::MatchedPulse> matched_cpi(const Scene& s,
                                           const std::vector<Target>& targets,
                                           const Eigen::MatrixXcd& wf) {
  std::vector<rmc::MatchedPulse> out;
  for (const rmc::Pulse& z : rmc::synthesize_cpi(s, wf, targets)) {
    out.push_back(rmc::matched_filter(z, wf));
  }
  return out;
}

// F column for one target: d(speed) kron a(angle).
Eigen::VectorXcd f_column(const Scene& s, const Target& t) {
  const Eigen::VectorXcd a = rmc::transmit_steering(s, t.angle_deg);
  const Eigen::VectorXcd d = rmc::doppler_vector(s, t.speed_mps);
  Eigen::VectorXcd f(s.num_pulses * s.num_tx);
  for (int q = 0; q < s.num_pulses; ++q) {
    f.segment(q * s.num_tx, s.num_tx) = d(q) * a;
  }
  return f;
}

}  // namespace

TEST_CASE("matched filter cancels orthogonal waveforms") {
  const Scene s = paper_scene();
  const Eigen::MatrixXcd wf = rmc::make_waveforms(s);
  const std::vector<Target> targets{{-12.0, 210.0, {0.8, -0.3}},
                                    {23.0, 330.0, {-0.5, 1.1}}};
  for (int q = 1; q <= s.num_pulses; ++q) {
    const rmc::Pulse z = rmc::synthesize_pulse(s, wf, targets, q);
    const rmc::MatchedPulse y = rmc::matched_filter(z, wf);
    REQUIRE(y.entries.rows() == s.num_rx);
    REQUIRE(y.entries.cols() == s.num_tx);
    CHECK(y.pulse_index == q);
    // Direct construction of B Sigma D_q A^T.
    Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(s.num_rx, s.num_tx);
    const Eigen::VectorXcd dop0 = rmc::doppler_vector(s, targets[0].speed_mps);
    const Eigen::VectorXcd dop1 = rmc::doppler_vector(s, targets[1].speed_mps);
    want += targets[0].beta * dop0(q - 1) *
            rmc::receive_steering(s, targets[0].angle_deg) *
            rmc::transmit_steering(s, targets[0].angle_deg).transpose();
    want += targets[1].beta * dop1(q - 1) *
            rmc::receive_steering(s, targets[1].angle_deg) *
            rmc::transmit_steering(s, targets[1].angle_deg).transpose();
    CHECK((y.entries - want).norm() <= 1e-10 * want.norm());
  }
}

TEST_CASE("matched filter hand value: broadside unit target") {
  Scene s = paper_scene();
  s.num_tx = 4;
  s.num_rx = 6;
  const Eigen::MatrixXcd wf = rmc::make_waveforms(s);
  const std::vector<Target> t{{0.0, 0.0, {1.0, 0.0}}};
  const rmc::Pulse z = rmc::synthesize_pulse(s, wf, t, 1);
  const rmc::MatchedPulse y = rmc::matched_filter(z, wf);
  CHECK((y.entries - Eigen::MatrixXcd::Ones(6, 4)).norm() < 1e-10);
  // Zero input gives zero output.
  const rmc::MatchedPulse zero =
      rmc::matched_filter(Eigen::MatrixXcd::Zero(6, 128), 1, wf);
  CHECK(zero.entries.norm() == 0.0);
  CHECK_THROWS_AS(
      rmc::matched_filter(Eigen::MatrixXcd::Zero(6, 64), 1, wf),
      rmc::DomainError);
}

TEST_CASE("stacked data satisfies the factor model") {
  const Scene s = paper_scene();
  const Eigen::MatrixXcd wf = rmc::make_waveforms(s);
  const std::vector<Target> targets{{-12.0, 210.0, {0.8, -0.3}},
                                    {23.0, 330.0, {-0.5, 1.1}},
                                    {44.0, 170.0, {0.3, 0.9}}};
  const Eigen::MatrixXcd y = rmc::stack_and_reshape(
      matched_cpi(s, targets, wf), s.num_pulses, s.num_tx, s.num_rx);
  REQUIRE(y.rows() == s.num_pulses * s.num_tx);
  REQUIRE(y.cols() == s.num_rx);
  Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(y.rows(), y.cols());
  for (const Target& t : targets) {
    want += t.beta * f_column(s, t) *
            rmc::receive_steering(s, t.angle_deg).transpose();
  }
  CHECK((y - want).norm() <= 1e-10 * want.norm());
}

TEST_CASE("single target stacks to a rank-one matrix") {
  const Scene s = paper_scene();
  const Eigen::MatrixXcd wf = rmc::make_waveforms(s);
  const std::vector<Target> targets{{7.0, 260.0, {1.0, 0.5}}};
  const Eigen::MatrixXcd y = rmc::stack_and_reshape(
      matched_cpi(s, targets, wf), s.num_pulses, s.num_tx, s.num_rx);
  const Eigen::VectorXd sv = rmc::linalg::singular_values(y);
  CHECK(sv(1) / sv(0) < 1e-10);
}

TEST_CASE("stacking is order independent and validates indices") {
  const Scene s = paper_scene();
  const Eigen::MatrixXcd wf = rmc::make_waveforms(s);
  const std::vector<Target> targets{{-3.0, 180.0, {1.0, 0.0}}};
  auto pulses = matched_cpi(s, targets, wf);
  const Eigen::MatrixXcd y =
      rmc::stack_and_reshape(pulses, s.num_pulses, s.num_tx, s.num_rx);
  std::reverse(pulses.begin(), pulses.end());
  const Eigen::MatrixXcd y2 =
      rmc::stack_and_reshape(pulses, s.num_pulses, s.num_tx, s.num_rx);
  CHECK((y - y2).norm() == 0.0);

  auto missing = pulses;
  missing.pop_back();
  CHECK_THROWS_AS(
      rmc::stack_and_reshape(missing, s.num_pulses, s.num_tx, s.num_rx),
      rmc::DomainError);
  auto dup = pulses;
  dup.back().pulse_index = dup.front().pulse_index;
  CHECK_THROWS_AS(
      rmc::stack_and_reshape(dup, s.num_pulses, s.num_tx, s.num_rx),
      rmc::DomainError);
}

TEST_CASE("sample covariance is hermitian with rank K noise-free") {
  const Scene s = paper_scene();
  const Eigen::MatrixXcd wf = rmc::make_waveforms(s);
  const std::vector<Target> targets{{-12.0, 210.0, {0.8, -0.3}},
                                    {23.0, 330.0, {-0.5, 1.1}}};
  const Eigen::MatrixXcd y = rmc::stack_and_reshape(
      matched_cpi(s, targets, wf), s.num_pulses, s.num_tx, s.num_rx);
  const Eigen::MatrixXcd r = rmc::sample_covariance(y);
  CHECK((r - r.adjoint()).norm() < 1e-12 * r.norm());
  const rmc::linalg::Eigh eig = rmc::linalg::eigh(r);
  const double trace = r.real().trace();
  int above = 0;
  for (int i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) > 1e-8 * trace) ++above;
  }
  CHECK(above == 2);
}

TEST_CASE("music locates two targets to fine-grid accuracy") {
  const Scene s = paper_scene();
  const Eigen::MatrixXcd wf = rmc::make_waveforms(s);
  const std::vector<Target> targets{{-10.0, 150.0, {1.0, 0.0}},
                                    {10.0, 400.0, {0.7, -0.7}}};
  const Eigen::MatrixXcd y = rmc::stack_and_reshape(
      matched_cpi(s, targets, wf), s.num_pulses, s.num_tx, s.num_rx);
  const Eigen::MatrixXcd cov = rmc::sample_covariance(y);
  const auto angle_grid = rmc::make_grid(-15.0, 15.0, 0.01);
  const std::vector<double> speed_grid{150.0, 400.0};
  const rmc::EstimationReport rep =
      rmc::music_spectrum(cov, 2, angle_grid, speed_grid, s);
  REQUIRE(rep.peaks.size() == 2);
  std::vector<double> est = rmc::peak_angles(rep);
  std::sort(est.begin(), est.end());
  CHECK(std::abs(est[0] - (-10.0)) <= 0.05);
  CHECK(std::abs(est[1] - 10.0) <= 0.05);
  // Spectrum values at the truth dominate a generic off-peak point.
  CHECK(rep.peaks[0].value > 1e3);
}

TEST_CASE("music kernel agrees with the serial reference") {
  Scene s = paper_scene();
  s.num_tx = 8;
  s.num_rx = 12;
  s.num_pulses = 3;
  const Eigen::MatrixXcd wf = rmc::make_waveforms(s);
  const std::vector<Target> targets{{-6.0, 200.0, {1.0, 0.2}},
                                    {9.0, 360.0, {0.4, -1.0}}};
  const Eigen::MatrixXcd y = rmc::stack_and_reshape(
      matched_cpi(s, targets, wf), s.num_pulses, s.num_tx, s.num_rx);
  const Eigen::MatrixXcd cov = rmc::sample_covariance(y);
  const auto angle_grid = rmc::make_grid(-20.0, 20.0, 0.5);
  const auto speed_grid = rmc::make_grid(150.0, 450.0, 50.0);
  const rmc::EstimationReport fast =
      rmc::music_spectrum(cov, 2, angle_grid, speed_grid, s);
  const Eigen::MatrixXd slow =
      rmc::reference::music_spectrum(cov, 2, angle_grid, speed_grid, s);
  REQUIRE(fast.spectrum.rows() == slow.rows());
  REQUIRE(fast.spectrum.cols() == slow.cols());
  CHECK((fast.spectrum - slow).norm() <= 1e-10 * slow.norm());
}

TEST_CASE("music spectrum is invariant to covariance scaling") {
  const Scene s = paper_scene();
  const Eigen::MatrixXcd wf = rmc::make_waveforms(s);
  const std::vector<Target> targets{{-4.0, 220.0, {1.0, 0.0}}};
  const Eigen::MatrixXcd y = rmc::stack_and_reshape(
      matched_cpi(s, targets, wf), s.num_pulses, s.num_tx, s.num_rx);
  const Eigen::MatrixXcd cov = rmc::sample_covariance(y);
  const auto angle_grid = rmc::make_grid(-10.0, 10.0, 0.25);
  const std::vector<double> speed_grid{220.0};
  const rmc::EstimationReport a =
      rmc::music_spectrum(cov, 1, angle_grid, speed_grid, s);
  const rmc::EstimationReport b =
      rmc::music_spectrum(5.0 * cov, 1, angle_grid, speed_grid, s);
  REQUIRE(a.peaks.size() == 1);
  REQUIRE(b.peaks.size() == 1);
  CHECK(a.peaks[0].angle_deg == doctest::Approx(b.peaks[0].angle_deg));
  CHECK(std::abs(a.peaks[0].angle_deg - (-4.0)) < 0.25);
}

TEST_CASE("music argument validation") {
  const Scene s = paper_scene();
  const Eigen::MatrixXcd cov =
      Eigen::MatrixXcd::Identity(s.num_pulses * s.num_tx, s.num_pulses * s.num_tx);
  const auto grid = rmc::make_grid(-10.0, 10.0, 1.0);
  CHECK_THROWS_AS(
      rmc::music_spectrum(cov, s.num_pulses * s.num_tx, grid, {200.0}, s),
      rmc::DomainError);
  CHECK_THROWS_AS(rmc::music_spectrum(cov, 1, {}, {200.0}, s),
                  rmc::DomainError);
  CHECK_THROWS_AS(rmc::music_spectrum(cov, 1, grid, {}, s), rmc::DomainError);
  const Eigen::MatrixXcd wrong = Eigen::MatrixXcd::Identity(10, 10);
  CHECK_THROWS_AS(rmc::music_spectrum(wrong, 1, grid, {200.0}, s),
                  rmc::DomainError);
}

TEST_CASE("doa projection takes the max over speeds") {
  rmc::EstimationReport rep;
  rep.angle_grid = {0.0, 1.0};
  rep.speed_grid = {100.0, 200.0, 300.0};
  rep.spectrum.resize(2, 3);
  rep.spectrum << 1.0, 5.0, 2.0, 4.0, 3.0, 6.0;
  const std::vector<double> doa = rmc::doa_spectrum(rep);
  REQUIRE(doa.size() == 2);
  CHECK(doa[0] == 5.0);
  CHECK(doa[1] == 6.0);
}

TEST_CASE("make_grid endpoints are inclusive") {
  const auto g = rmc::make_grid(0.0, 1.0, 0.25);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == doctest::Approx(1.0));
  const auto single = rmc::make_grid(2.0, 2.0, 1.0);
  REQUIRE(single.size() == 1);
  CHECK(single[0] == 2.0);
  CHECK_THROWS_AS(rmc::make_grid(0.0, 1.0, 0.0), rmc::DomainError);
  CHECK_THROWS_AS(rmc::make_grid(1.0, 0.0, 0.5), rmc::DomainError);
}

TEST_CASE("resolution scoring implements the epsilon d_theta rule") {
  using rmc::resolution_success;
  // Exact estimates succeed.
  auto ok = resolution_success({5.0, -5.0}, {-5.0, 5.0}, 1.0, 0.1);
  CHECK(ok == std::vector<bool>{true, true});
  // 0.09 degrees off at d=1, eps=0.1: success; 0.11 off: failure.
  ok = resolution_success({-5.09, 5.0}, {-5.0, 5.0}, 1.0, 0.1);
  CHECK(ok[0]);
  ok = resolution_success({-5.11, 5.0}, {-5.0, 5.0}, 1.0, 0.1);
  CHECK_FALSE(ok[0]);
  CHECK(ok[1]);
  // Swapped order is matched by proximity.
  ok = resolution_success({5.02, -4.98}, {-5.0, 5.0}, 1.0, 0.1);
  CHECK(ok == std::vector<bool>{true, true});
  CHECK_THROWS_AS(resolution_success({1.0}, {1.0, 2.0}, 1.0, 0.1),
                  rmc::DomainError);
}
