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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ecs::cli {

// Exit statuses of `ecs run`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSizing = 3;
inline constexpr int kExitInvariant = 4;

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

class InvariantBreach : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string experiment;
  nlohmann::json parameters;  // fully resolved, defaults filled in
  std::uint64_t seed = 0;
  std::string output_dir;

  // Canonical form hashed into every artifact. output_dir is excluded so the
  // same run written to two directories is byte-identical.
  nlohmann::json resolved() const;
  std::string hash() const;
};

const std::vector<std::string>& experiment_names();

ExperimentConfig parse_config(const nlohmann::json& doc, std::optional<std::uint64_t> seed_override = std::nullopt,
                              std::optional<std::string> out_override = std::nullopt);

ExperimentConfig load_config(const std::string& path, std::optional<std::uint64_t> seed_override = std::nullopt,
                             std::optional<std::string> out_override = std::nullopt);

std::string sha256_hex(const std::string& text);

}  // namespace ecs::cli
