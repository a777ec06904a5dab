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

#include <filesystem>

#include <json.hpp>

#include "rmc/harness.hpp"

namespace rmc {

// JSON field names follow the type definitions (snake_case). Unknown keys
// and malformed values raise ConfigError so the CLI exits with code 1.

Scene scene_from_json(const nlohmann::json& j);
nlohmann::json scene_to_json(const Scene& scene);

Target target_from_json(const nlohmann::json& j);
nlohmann::json target_to_json(const Target& target);

SolverOptions solver_from_json(const nlohmann::json& j);
nlohmann::json solver_to_json(const SolverOptions& options);

ExperimentSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const ExperimentSpec& spec);

/// Reads and parses a spec file; parse failures and unknown fields raise
/// ConfigError, missing file raises ConfigError as well (bad --config is
/// a configuration mistake).
ExperimentSpec load_spec(const std::filesystem::path& path);

nlohmann::json report_to_json(const EstimationReport& report);

}  // namespace rmc
