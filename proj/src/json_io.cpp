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

#include "rmc/json_io.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <string>

namespace rmc {
namespace {

using nlohmann::json;

void check_keys(const json& j, const char* what,
                std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) {
    throw ConfigError(std::string(what) + ": expected a JSON object");
  }
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (std::string_view a : allowed) {
      if (key == a) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw ConfigError(std::string(what) + ": unknown field '" + key + "'");
    }
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config: field '") + key +
                      "' has the wrong type");
  }
}

std::complex<double> complex_from_json(const json& j, const char* key) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ConfigError(std::string("config: field '") + key +
                    "' must be a number or [re, im]");
}

TargetDraw draw_from_json(const json& j) {
  check_keys(j, "draw",
             {"count", "angle_lo", "angle_hi", "speed_lo", "speed_hi",
              "min_separation", "random_beta"});
  TargetDraw d;
  d.count = get_or(j, "count", d.count);
  d.angle_lo = get_or(j, "angle_lo", d.angle_lo);
  d.angle_hi = get_or(j, "angle_hi", d.angle_hi);
  d.speed_lo = get_or(j, "speed_lo", d.speed_lo);
  d.speed_hi = get_or(j, "speed_hi", d.speed_hi);
  d.min_separation = get_or(j, "min_separation", d.min_separation);
  d.random_beta = get_or(j, "random_beta", d.random_beta);
  return d;
}

json draw_to_json(const TargetDraw& d) {
  return json{{"count", d.count},
              {"angle_lo", d.angle_lo},
              {"angle_hi", d.angle_hi},
              {"speed_lo", d.speed_lo},
              {"speed_hi", d.speed_hi},
              {"min_separation", d.min_separation},
              {"random_beta", d.random_beta}};
}

}  // namespace

Scene scene_from_json(const json& j) {
  check_keys(j, "scene",
             {"num_tx", "num_rx", "tx_spacing", "rx_spacing", "carrier_freq",
              "wavelength", "num_pulses", "pri", "num_samples",
              "sample_period", "waveform_kind", "rng_seed"});
  Scene s;
  s.num_tx = get_or(j, "num_tx", s.num_tx);
  s.num_rx = get_or(j, "num_rx", s.num_rx);
  s.tx_spacing = get_or(j, "tx_spacing", s.tx_spacing);
  s.rx_spacing = get_or(j, "rx_spacing", s.rx_spacing);
  s.carrier_freq = get_or(j, "carrier_freq", s.carrier_freq);
  s.num_pulses = get_or(j, "num_pulses", s.num_pulses);
  s.pri = get_or(j, "pri", s.pri);
  s.num_samples = get_or(j, "num_samples", s.num_samples);
  s.sample_period = get_or(j, "sample_period", s.sample_period);
  if (j.contains("waveform_kind")) {
    s.waveform_kind = waveform_from_name(j.at("waveform_kind").get<std::string>());
  }
  s.rng_seed = get_or<std::uint64_t>(j, "rng_seed", s.rng_seed);
  if (j.contains("wavelength")) {
    const auto lambda = get_or(j, "wavelength", 0.0);
    if (std::abs(lambda - s.wavelength()) > 1e-12 * s.wavelength()) {
      throw ConfigError(
          "scene: wavelength is inconsistent with carrier_freq (lambda = c/f)");
    }
  }
  try {
    s.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("scene: ") + e.what());
  }
  return s;
}

json scene_to_json(const Scene& s) {
  return json{{"num_tx", s.num_tx},
              {"num_rx", s.num_rx},
              {"tx_spacing", s.tx_spacing},
              {"rx_spacing", s.rx_spacing},
              {"carrier_freq", s.carrier_freq},
              {"num_pulses", s.num_pulses},
              {"pri", s.pri},
              {"num_samples", s.num_samples},
              {"sample_period", s.sample_period},
              {"waveform_kind", std::string(to_string(s.waveform_kind))},
              {"rng_seed", s.rng_seed}};
}

Target target_from_json(const json& j) {
  check_keys(j, "target", {"angle", "speed", "reflectivity"});
  Target t;
  t.angle_deg = get_or(j, "angle", t.angle_deg);
  t.speed_mps = get_or(j, "speed", t.speed_mps);
  if (j.contains("reflectivity")) {
    t.beta = complex_from_json(j.at("reflectivity"), "reflectivity");
  }
  return t;
}

json target_to_json(const Target& t) {
  return json{{"angle", t.angle_deg},
              {"speed", t.speed_mps},
              {"reflectivity", {t.beta.real(), t.beta.imag()}}};
}

SolverOptions solver_from_json(const json& j) {
  check_keys(j, "solver",
             {"mu0_factor", "mu_decay", "max_stages", "max_inner_iterations",
              "inner_tolerance", "step_size", "stage_tolerance",
              "feasibility_slack", "backend", "record_trace"});
  SolverOptions o;
  o.mu0_factor = get_or(j, "mu0_factor", o.mu0_factor);
  o.mu_decay = get_or(j, "mu_decay", o.mu_decay);
  o.max_stages = get_or(j, "max_stages", o.max_stages);
  o.max_inner_iterations =
      get_or(j, "max_inner_iterations", o.max_inner_iterations);
  o.inner_tolerance = get_or(j, "inner_tolerance", o.inner_tolerance);
  o.step_size = get_or(j, "step_size", o.step_size);
  o.stage_tolerance = get_or(j, "stage_tolerance", o.stage_tolerance);
  o.feasibility_slack = get_or(j, "feasibility_slack", o.feasibility_slack);
  if (j.contains("backend")) {
    const auto name = j.at("backend").get<std::string>();
    if (name == "auto") {
      o.backend = SvtBackend::kAuto;
    } else if (name == "exact") {
      o.backend = SvtBackend::kExact;
    } else if (name == "gram") {
      o.backend = SvtBackend::kGram;
    } else {
      throw ConfigError("solver: backend must be auto, exact, or gram");
    }
  }
  o.record_trace = get_or(j, "record_trace", o.record_trace);
  try {
    o.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("solver: ") + e.what());
  }
  return o;
}

json solver_to_json(const SolverOptions& o) {
  const char* backend = o.backend == SvtBackend::kExact  ? "exact"
                        : o.backend == SvtBackend::kGram ? "gram"
                                                         : "auto";
  return json{{"mu0_factor", o.mu0_factor},
              {"mu_decay", o.mu_decay},
              {"max_stages", o.max_stages},
              {"max_inner_iterations", o.max_inner_iterations},
              {"inner_tolerance", o.inner_tolerance},
              {"step_size", o.step_size},
              {"stage_tolerance", o.stage_tolerance},
              {"feasibility_slack", o.feasibility_slack},
              {"backend", backend},
              {"record_trace", o.record_trace}};
}

ExperimentSpec spec_from_json(const json& j) {
  check_keys(j, "spec",
             {"scene", "targets", "draw", "snr_db", "fractions", "schemes",
              "waveforms", "trials", "seed", "out_dir", "solver", "angle_lo",
              "angle_hi", "angle_step", "speed_lo", "speed_hi", "speed_step",
              "separations", "epsilon"});
  ExperimentSpec spec;
  if (j.contains("scene")) spec.scene = scene_from_json(j.at("scene"));
  if (j.contains("targets")) {
    if (!j.at("targets").is_array()) {
      throw ConfigError("spec: targets must be an array");
    }
    for (const auto& t : j.at("targets")) {
      spec.targets.push_back(target_from_json(t));
    }
  }
  if (j.contains("draw")) spec.draw = draw_from_json(j.at("draw"));
  spec.snr_db = get_or(j, "snr_db", spec.snr_db);
  spec.fractions = get_or(j, "fractions", spec.fractions);
  if (j.contains("schemes")) {
    spec.schemes.clear();
    for (const auto& s : j.at("schemes")) {
      spec.schemes.push_back(scheme_from_name(s.get<std::string>()));
    }
  }
  if (j.contains("waveforms")) {
    spec.waveforms.clear();
    for (const auto& w : j.at("waveforms")) {
      spec.waveforms.push_back(waveform_from_name(w.get<std::string>()));
    }
  }
  spec.trials = get_or(j, "trials", spec.trials);
  spec.seed = get_or<std::uint64_t>(j, "seed", spec.seed);
  spec.out_dir = get_or<std::string>(j, "out_dir", spec.out_dir);
  if (j.contains("solver")) spec.solver = solver_from_json(j.at("solver"));
  spec.angle_lo = get_or(j, "angle_lo", spec.angle_lo);
  spec.angle_hi = get_or(j, "angle_hi", spec.angle_hi);
  spec.angle_step = get_or(j, "angle_step", spec.angle_step);
  spec.speed_lo = get_or(j, "speed_lo", spec.speed_lo);
  spec.speed_hi = get_or(j, "speed_hi", spec.speed_hi);
  spec.speed_step = get_or(j, "speed_step", spec.speed_step);
  spec.separations = get_or(j, "separations", spec.separations);
  spec.epsilon = get_or(j, "epsilon", spec.epsilon);
  spec.validate();
  return spec;
}

json spec_to_json(const ExperimentSpec& spec) {
  json targets = json::array();
  for (const Target& t : spec.targets) targets.push_back(target_to_json(t));
  json schemes = json::array();
  for (Scheme s : spec.schemes) schemes.push_back(std::string(to_string(s)));
  json waveforms = json::array();
  for (Waveform w : spec.waveforms) {
    waveforms.push_back(std::string(to_string(w)));
  }
  return json{{"scene", scene_to_json(spec.scene)},
              {"targets", targets},
              {"draw", draw_to_json(spec.draw)},
              {"snr_db", spec.snr_db},
              {"fractions", spec.fractions},
              {"schemes", schemes},
              {"waveforms", waveforms},
              {"trials", spec.trials},
              {"seed", spec.seed},
              {"out_dir", spec.out_dir},
              {"solver", solver_to_json(spec.solver)},
              {"angle_lo", spec.angle_lo},
              {"angle_hi", spec.angle_hi},
              {"angle_step", spec.angle_step},
              {"speed_lo", spec.speed_lo},
              {"speed_hi", spec.speed_hi},
              {"speed_step", spec.speed_step},
              {"separations", spec.separations},
              {"epsilon", spec.epsilon}};
}

ExperimentSpec load_spec(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) {
    throw ConfigError("cannot open config file: " + path.string());
  }
  json j;
  try {
    j = json::parse(f);
  } catch (const json::exception& e) {
    throw ConfigError("config parse failed (" + path.string() +
                      "): " + e.what());
  }
  return spec_from_json(j);
}

json report_to_json(const EstimationReport& report) {
  json peaks = json::array();
  for (const Peak& p : report.peaks) {
    peaks.push_back(json{{"angle", p.angle_deg},
                         {"speed", p.speed_mps},
                         {"value", p.value}});
  }
  json success = json::array();
  for (bool s : report.success) success.push_back(s);
  return json{{"assumed_k", report.assumed_k},
              {"peaks", peaks},
              {"success", success}};
}

}  // namespace rmc
