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

#include "ecs/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include "ecs/errors.hpp"
#include "ecs/serialize.hpp"

namespace ecs {

double CountDistribution::total() const {
  double t = 0.0;
  for (const auto& [k, p] : probabilities) t += p;
  return t;
}

double CountDistribution::probability(const std::vector<int>& counts) const {
  const auto it = probabilities.find(counts);
  return it == probabilities.end() ? 0.0 : it->second;
}

CountDistribution CountDistribution::marginal(const std::vector<int>& positions) const {
  CountDistribution out;
  for (int p : positions) out.modes.push_back(modes.at(static_cast<std::size_t>(p)));
  for (const auto& [k, prob] : probabilities) {
    std::vector<int> key;
    for (int p : positions) key.push_back(k.at(static_cast<std::size_t>(p)));
    out.probabilities[key] += prob;
  }
  return out;
}

namespace {

void check_modes(const ModeShape& shape, const std::vector<int>& modes) {
  if (modes.empty()) throw ValidationError("measurement: no modes given");
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (modes[i] < 0 || modes[i] >= shape.mode_count()) throw ValidationError("measurement: invalid mode " + std::to_string(modes[i]));
    for (std::size_t j = 0; j < i; ++j) {
      if (modes[i] == modes[j]) throw ValidationError("measurement: repeated mode");
    }
  }
}

}  // namespace

CountDistribution joint_count_distribution(const FockVector& state, const std::vector<int>& modes) {
  check_modes(state.shape(), modes);
  const double n2 = state.norm_squared();
  if (std::abs(n2 - 1.0) > 1e-9) throw ValidationError("joint_count_distribution: state norm^2 is " + format_double(n2));
  CountDistribution out;
  out.modes = modes;
  std::vector<int> key(modes.size());
  for (std::size_t i = 0; i < state.shape().size(); ++i) {
    const double p = std::norm(state[i]);
    for (std::size_t k = 0; k < modes.size(); ++k) key[k] = state.shape().occupation(i, modes[k]);
    out.probabilities[key] += p;
  }
  return out;
}

FockVector project_counts_unnormalized(const FockVector& state, const std::vector<int>& modes,
                                       const std::vector<int>& counts) {
  const ModeShape& shape = state.shape();
  check_modes(shape, modes);
  if (counts.size() != modes.size()) throw ValidationError("project_counts: one count per mode required");
  if (static_cast<int>(modes.size()) >= shape.mode_count()) throw ValidationError("project_counts: at least one mode must remain unmeasured");
  for (std::size_t k = 0; k < modes.size(); ++k) {
    if (counts[k] < 0 || counts[k] > shape.cutoff(modes[k])) throw ValidationError("project_counts: count outside cutoff");
  }
  const ModeShape rest = shape.without(modes);
  std::vector<int> rest_modes;
  for (int k = 0; k < shape.mode_count(); ++k) {
    if (std::find(modes.begin(), modes.end(), k) == modes.end()) rest_modes.push_back(k);
  }
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(rest.size()));
  for (std::size_t i = 0; i < shape.size(); ++i) {
    bool match = true;
    for (std::size_t k = 0; k < modes.size() && match; ++k) match = shape.occupation(i, modes[k]) == counts[k];
    if (!match) continue;
    std::size_t r = 0;
    for (std::size_t k = 0; k < rest_modes.size(); ++k) r += static_cast<std::size_t>(shape.occupation(i, rest_modes[k])) * rest.stride(static_cast<int>(k));
    amps[static_cast<Eigen::Index>(r)] = state[i];
  }
  return FockVector(rest, std::move(amps));
}

ProjectionResult project_counts(const FockVector& state, const std::vector<int>& modes, const std::vector<int>& counts) {
  FockVector v = project_counts_unnormalized(state, modes, counts);
  const double p = v.norm_squared();
  if (p == 0.0) return {std::move(v), 0.0, true};
  return {v.normalized(), p, false};
}

void DetectionRecord::append(DetectionStep step) {
  if (cumulative.empty()) cumulative.assign(step.counts.size(), 0);
  if (cumulative.size() != step.counts.size()) throw ValidationError("DetectionRecord: detector count changed");
  for (std::size_t k = 0; k < cumulative.size(); ++k) cumulative[k] += step.counts[k];
  steps.push_back(std::move(step));
}

std::string DetectionRecord::to_json() const {
  nlohmann::json steps_json = nlohmann::json::array();
  for (const auto& st : steps) steps_json.push_back({{"step", st.step}, {"counts", st.counts}, {"probability", st.probability}});
  return nlohmann::json{{"seed", seed}, {"generator", generator}, {"cumulative", cumulative}, {"steps", steps_json}}.dump();
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

DetectionStep sample_counts(const FockVector& state, const std::vector<int>& modes, std::mt19937_64& rng) {
  const CountDistribution dist = joint_count_distribution(state, modes);
  const double u = uniform01(rng) * dist.total();
  double acc = 0.0;
  const std::vector<int>* last = nullptr;
  double last_p = 0.0;
  for (const auto& [k, p] : dist.probabilities) {
    if (p <= 0.0) continue;
    acc += p;
    last = &k;
    last_p = p;
    if (u < acc) return {0, k, p};
  }
  return {0, *last, last_p};
}

DetectionStep sample_counts(const FockVector& state, const std::vector<int>& modes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_counts(state, modes, rng);
}

}  // namespace ecs
