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
#include <utility>
#include <vector>

#include "ecs/conditional.hpp"
#include "ecs/fock.hpp"
#include "ecs/measurement.hpp"

namespace ecs {

/// Two cavities that started in |n, n), in the phase-pair representation
///   sum_{i,j} W(phi_i, phi'_j) |r e^{i phi_i}>_a |r e^{i phi'_j}>_b.
/// W carries the initial e^{-i n (phi + phi')} and every detection factor;
/// it is rescaled to unit maximum after each update.
struct TrajectoryState {
  int n = 0;
  PhasePairWeight weight;
  double radius_squared = 0.0;
  /// Photons left in the two cavities together.
  int remaining = 0;
  int steps_taken = 0;
  int total_a = 0;
  int total_b = 0;
};

/// Uniform phase distribution: |n, n) with radius^2 = n. grid_size 0 picks 4n + 4.
TrajectoryState initial_trajectory_state(int n, int grid_size = 0);

/// |n, n) components restricted to one relative phase: W is nonzero only on
/// the diagonal whose half difference is closest to `delta`.
TrajectoryState locked_trajectory_state(int n, double delta, int grid_size = 0);

struct OutcomeTable {
  std::vector<std::pair<int, int>> outcomes;
  std::vector<double> probabilities;
  /// Largest per-detector count enumerated.
  int cap = 0;
  /// 1 - sum of enumerated probabilities.
  double overflow = 0.0;
};

/// Probabilities of (A, B) for one leak of fraction eps from each cavity,
/// 50/50 mixing and counting. The cap starts at 4 and grows until the
/// unenumerated probability is below `overflow_tolerance`.
OutcomeTable outcome_probabilities(const TrajectoryState& state, double eps, double overflow_tolerance = 1e-10);

/// Probability of a single outcome.
double outcome_probability(const TrajectoryState& state, double eps, int A, int B);

/// Conditions the state on detecting (A, B) in one step.
TrajectoryState condition(const TrajectoryState& state, double eps, int A, int B);

struct TrajectoryResult {
  DetectionRecord record;
  TrajectoryState state;
  double max_overflow = 0.0;
  int max_cap = 0;
};

/// Repeated leak-mix-detect cycles with outcomes drawn from mt19937_64(seed).
/// Stops early when the cavities are empty.
TrajectoryResult run_interference_trajectory(int n, double eps, int steps, std::uint64_t seed, int grid_size = 0);

/// Normalized Fock state of the two cavities, cutoff `remaining` per mode.
FockVector cavity_fock_state(const TrajectoryState& state);

struct CavityMoments {
  double n_a = 0.0;
  double n_b = 0.0;
  cplx a_dag_b = 0.0;
};
CavityMoments cavity_moments(const TrajectoryState& state);

struct FringeCurve {
  std::vector<double> gamma;
  std::vector<double> intensity;
  double visibility = 0.0;
};

/// Mean count at the first output of a 50/50 mixer after a phase gamma on
/// the second cavity; visibility = (max - min) / (max + min) over the grid.
FringeCurve fringe_scan(const TrajectoryState& state, const std::vector<double>& gamma_grid);

/// Evenly spaced gammas on [0, 2 pi).
std::vector<double> gamma_grid(int points);

/// Exact Fock-space leak and mix: returns the four-mode state (cavity a,
/// cavity b, output a, output b) before counting. Cutoffs equal the largest
/// total photon number present in `cavities`.
FockVector exact_leak_and_mix(const FockVector& cavities, double eps);

/// Exact Fock-space version of one detection step on the cavity pair
/// (modes 0, 1): leak couplers to two output modes, 50/50 mix, project.
ProjectionResult exact_detection_step(const FockVector& cavities, double eps, int A, int B);

}  // namespace ecs
