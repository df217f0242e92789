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

#include "config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <openssl/sha.h>

namespace ecs::cli {

namespace {

enum class Kind { Integer, Number, String, IntegerList };

struct Field {
  const char* name;
  Kind kind;
  nlohmann::json fallback;  // null means required
};

using Schema = std::vector<Field>;

const std::map<std::string, Schema>& schemas() {
  static const std::map<std::string, Schema> all = {
      {"interfere",
       {{"A", Kind::Integer, nullptr},
        {"B", Kind::Integer, nullptr},
        {"eps", Kind::Number, 0.1},
        {"n", Kind::Number, 100.0},
        {"grid_size", Kind::Integer, 1024}}},
      {"trajectory",
       {{"n", Kind::Integer, 20},
        {"eps", Kind::Number, 0.05},
        {"steps", Kind::Integer, 200},
        {"grid_size", Kind::Integer, 0},
        {"fringe_points", Kind::Integer, 128}}},
      {"laser-equivalence",
       {{"nbar", Kind::Number, 1.0}, {"modes", Kind::Integer, 2}, {"cutoff", Kind::Integer, 12}}},
      {"phase-walk",
       {{"step_variance", Kind::Number, 0.1},
        {"modes", Kind::Integer, 11},
        {"photons", Kind::Integer, 1},
        {"realizations", Kind::Integer, 2000}}},
      {"homodyne",
       {{"photons", Kind::Integer, 10},
        {"splitter_theta", Kind::Number, std::acos(0.95)},
        {"mixer_phi", Kind::Number, -M_PI / 2},
        {"transmission", Kind::Number, 1.0},
        {"gamma_offset", Kind::Number, 0.0},
        {"gamma_points", Kind::Integer, 32}}},
      {"squeeze",
       {{"sqrt_n_zeta_t", Kind::Number, 0.2},
        {"pump_n", Kind::IntegerList, nlohmann::json::array({2, 4, 8, 12})}}},
      {"ecs-verify",
       {{"n", Kind::Integer, 4},
        {"n_prime", Kind::Integer, 2},
        {"theta", Kind::Number, M_PI / 4},
        {"phi", Kind::Number, 0.0}}},
  };
  return all;
}

bool matches(const nlohmann::json& v, Kind k) {
  switch (k) {
    case Kind::Integer:
      return v.is_number_integer();
    case Kind::Number:
      return v.is_number();
    case Kind::String:
      return v.is_string();
    case Kind::IntegerList:
      if (!v.is_array() || v.empty()) return false;
      for (const auto& x : v) {
        if (!x.is_number_integer()) return false;
      }
      return true;
  }
  return false;
}

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Integer:
      return "an integer";
    case Kind::Number:
      return "a number";
    case Kind::String:
      return "a string";
    case Kind::IntegerList:
      return "a non-empty list of integers";
  }
  return "";
}

std::string join(const std::vector<std::string>& lines) {
  std::string out = "invalid config:";
  for (const auto& l : lines) out += "\n  " + l;
  return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems) : std::runtime_error(join(problems)), problems_(std::move(problems)) {}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, schema] : schemas()) v.push_back(name);
    return v;
  }();
  return names;
}

nlohmann::json ExperimentConfig::resolved() const {
  return {{"experiment", experiment}, {"parameters", parameters}, {"seed", seed}};
}

std::string ExperimentConfig::hash() const { return sha256_hex(resolved().dump()); }

ExperimentConfig parse_config(const nlohmann::json& doc, std::optional<std::uint64_t> seed_override,
                              std::optional<std::string> out_override) {
  std::vector<std::string> problems;
  if (!doc.is_object()) throw ConfigError({"<root>: expected an object"});

  for (const auto& [key, value] : doc.items()) {
    if (key != "experiment" && key != "parameters" && key != "seed" && key != "output_dir") {
      problems.push_back(key + ": unknown key");
    }
  }

  ExperimentConfig cfg;
  const Schema* schema = nullptr;
  if (!doc.contains("experiment")) {
    std::string names;
    for (const auto& n : experiment_names()) names += (names.empty() ? "" : ", ") + n;
    problems.push_back("experiment: required (one of " + names + ")");
  } else if (!doc["experiment"].is_string()) {
    problems.push_back("experiment: must be a string");
  } else {
    cfg.experiment = doc["experiment"].get<std::string>();
    const auto it = schemas().find(cfg.experiment);
    if (it == schemas().end()) {
      problems.push_back("experiment: unknown experiment '" + cfg.experiment + "'");
    } else {
      schema = &it->second;
    }
  }

  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) {
      problems.push_back("seed: must be a non-negative integer");
    } else {
      cfg.seed = doc["seed"].get<std::uint64_t>();
    }
  } else if (!seed_override) {
    problems.push_back("seed: required (or pass --seed)");
  }
  if (seed_override) cfg.seed = *seed_override;

  if (doc.contains("output_dir")) {
    if (!doc["output_dir"].is_string()) {
      problems.push_back("output_dir: must be a string");
    } else {
      cfg.output_dir = doc["output_dir"].get<std::string>();
    }
  }
  if (out_override) cfg.output_dir = *out_override;
  if (cfg.output_dir.empty()) cfg.output_dir = ".";

  const nlohmann::json params = doc.value("parameters", nlohmann::json::object());
  if (!params.is_object()) {
    problems.push_back("parameters: must be an object");
  } else if (schema) {
    cfg.parameters = nlohmann::json::object();
    for (const auto& [key, value] : params.items()) {
      bool known = false;
      for (const auto& f : *schema) known = known || key == f.name;
      if (!known) problems.push_back("parameters." + key + ": unknown key for experiment " + cfg.experiment);
    }
    for (const auto& f : *schema) {
      if (params.contains(f.name)) {
        const auto& v = params[f.name];
        if (!matches(v, f.kind)) {
          problems.push_back(std::string("parameters.") + f.name + ": must be " + kind_name(f.kind));
        } else {
          cfg.parameters[f.name] = v;
        }
      } else if (f.fallback.is_null()) {
        problems.push_back(std::string("parameters.") + f.name + ": required");
      } else {
        cfg.parameters[f.name] = f.fallback;
      }
    }
  }

  if (!problems.empty()) throw ConfigError(std::move(problems));
  return cfg;
}

ExperimentConfig load_config(const std::string& path, std::optional<std::uint64_t> seed_override,
                             std::optional<std::string> out_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError({path + ": cannot open config file"});
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError({path + ": " + e.what()});
  }
  return parse_config(doc, seed_override, std::move(out_override));
}

std::string sha256_hex(const std::string& text) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(text.data()), text.size(), digest);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned char c : digest) {
    out += hex[c >> 4];
    out += hex[c & 15];
  }
  return out;
}

}  // namespace ecs::cli
