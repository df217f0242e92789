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
#include <map>
#include <random>
#include <string>
#include <vector>

#include "ecs/fock.hpp"

namespace ecs {

/// Probabilities of per-mode count tuples (in the order the modes were given).
struct CountDistribution {
  std::vector<int> modes;
  std::map<std::vector<int>, double> probabilities;

  double total() const;
  double probability(const std::vector<int>& counts) const;
  /// Distribution of the listed positions of the count tuple.
  CountDistribution marginal(const std::vector<int>& positions) const;
};

/// Born-rule distribution of the counts on `modes`. Throws ValidationError
/// when |norm^2 - 1| > 1e-9.
CountDistribution joint_count_distribution(const FockVector& state, const std::vector<int>& modes);

struct ProjectionResult {
  /// Renormalized state of the unmeasured modes (zero vector when the
  /// outcome has zero probability).
  FockVector state;
  double probability = 0.0;
  bool zero_probability = false;
};

/// Projects `modes` onto `counts`. At least one mode must remain unmeasured.
ProjectionResult project_counts(const FockVector& state, const std::vector<int>& modes, const std::vector<int>& counts);

/// Unnormalized projection: the conditional vector whose squared norm is the
/// outcome probability.
FockVector project_counts_unnormalized(const FockVector& state, const std::vector<int>& modes,
                                       const std::vector<int>& counts);

struct DetectionStep {
  int step = 0;
  std::vector<int> counts;
  double probability = 0.0;
};

/// Ordered detections with the generator needed to replay them.
struct DetectionRecord {
  std::uint64_t seed = 0;
  std::string generator = "mt19937_64";
  std::vector<DetectionStep> steps;
  std::vector<int> cumulative;

  void append(DetectionStep step);
  std::string to_json() const;
};

/// Draws one count tuple by inverse-CDF on a single uniform variate.
DetectionStep sample_counts(const FockVector& state, const std::vector<int>& modes, std::mt19937_64& rng);
DetectionStep sample_counts(const FockVector& state, const std::vector<int>& modes, std::uint64_t seed);

/// Uniform variate in [0, 1) with 53 random bits; independent of the
/// standard library's distribution implementation.
double uniform01(std::mt19937_64& rng);

}  // namespace ecs
