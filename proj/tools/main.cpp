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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "ecs/errors.hpp"
#include "ecs/parallel.hpp"
#include "runner/config.hpp"
#include "runner/experiments.hpp"
#include "runner/verify.hpp"

namespace {

using namespace ecs::cli;

int run_command(const std::string& config_path, std::optional<std::uint64_t> seed, std::optional<std::string> out) {
  try {
    const ExperimentConfig cfg = load_config(config_path, seed, std::move(out));
    const ExperimentOutput result = run_experiment(cfg);
    write_artifacts(cfg, result);
    std::cout << cfg.experiment << ": wrote " << cfg.output_dir << " (config " << cfg.hash().substr(0, 12) << ", seed "
              << cfg.seed << ")\n";
    if (!result.breaches.empty()) {
      for (const auto& b : result.breaches) std::cerr << "invariant breach: " << b << "\n";
      return kExitInvariant;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  } catch (const ecs::SizingError& e) {
    std::cerr << "sizing error: " << e.what() << "\n";
    return kExitSizing;
  } catch (const ecs::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const ecs::Error& e) {
    // Domain and validation errors come from parameter values the schema cannot see.
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ecs: entangled coherent state experiments"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run one experiment from a JSON config");
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  run->add_option("--config", config_path, "config file")->required();
  run->add_option("--seed", seed, "override the config seed");
  run->add_option("--out", out, "override the output directory");

  auto* verify = app.add_subcommand("verify", "run the cross-module invariant suite");
  std::string suite = "fast";
  verify->add_option("--suite", suite, "fast or full")->check(CLI::IsMember({"fast", "full"}));

  CLI11_PARSE(app, argc, argv);

  if (*run) return run_command(config_path, seed, out);

  std::cout << "suite " << suite << ", " << ecs::thread_count() << " threads\n";
  const auto rows = run_suite(suite);
  print_table(std::cout, rows);
  for (const auto& r : rows) {
    if (!r.pass) return 1;
  }
  return 0;
}
