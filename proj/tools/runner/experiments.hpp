// Copyright 2026 The ecs-optics Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "config.hpp"

namespace ecs::cli {

struct ExperimentOutput {
  std::vector<std::string> csv_columns;
  std::vector<std::vector<double>> csv_rows;
  nlohmann::json results = nlohmann::json::object();
  std::vector<std::string> breaches;  // invariant violations detected during the run
};

ExperimentOutput run_experiment(const ExperimentConfig& config);

// Writes manifest.json, results.csv and results.json into config.output_dir.
void write_artifacts(const ExperimentConfig& config, const ExperimentOutput& out);

}  // namespace ecs::cli
