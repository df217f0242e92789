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
#include <vector>

#include <Eigen/Dense>

#include "ecs/ecs_state.hpp"
#include "ecs/fock.hpp"

namespace ecs {

/// Ideal single-mode laser: Poissonian mixture of number states.
struct LaserSpec {
  double nbar = 0.0;
  int cutoff = 0;
};

/// p_n = Pi_n(nbar) for n <= cutoff.
NumberDiagonalDensity laser_density(const LaserSpec& spec);

/// Output of |m) split equally over n_modes by linear coupling:
///   Pi_m(m)^{-1/2} \int dphi/2pi e^{-i m phi} |sqrt(m/N) e^{i phi}, ..., sqrt(m/N) e^{i phi}>.
/// `conjugate` selects the mirrored form with weight e^{+i m phi} and
/// amplitudes sqrt(m/N) e^{-i phi}; both synthesize the same state.
ECSState multimode_output_number(int m, int n_modes, int cutoff, bool conjugate = false, int grid_size = 0);

/// prod_k |sqrt(nbar/N) e^{i phi}>_k on N modes of the given cutoff.
FockVector multimode_output_coherent(double nbar, double phi, int n_modes, int cutoff);

struct EquivalenceReport {
  /// Trace distance between the two decompositions on the truncated space.
  double trace_distance = 0.0;
  /// Weight of either side lost to per-mode truncation (union bound over modes).
  double truncation_tail = 0.0;
  /// Trace of each side on the truncated space.
  double trace_number_side = 0.0;
  double trace_coherent_side = 0.0;
  int grid_size = 0;
};

/// Compares sum_m Pi_m(nbar) |out_m><out_m| (number-state outputs) with the
/// phase average of the coherent product outputs. Both sides are block
/// diagonal in total photon number, so the distance is evaluated per block.
EquivalenceReport decomposition_equivalence_check(double nbar, int n_modes, int cutoff);

/// Phase-diffusing output: phi(t_k) = phi + sum of k Gaussian increments.
struct PhaseWalkSpec {
  double step_variance = 0.0;
  int mode_count = 1;
  int photons = 1;
  std::uint64_t seed = 0;
};

struct CoherenceEstimate {
  /// Average over realizations of the normalized first-order correlation.
  Eigen::MatrixXcd g1;
  /// Standard error of |g1| entries' real projection onto the mean phase
  /// direction, per entry.
  Eigen::MatrixXd standard_error;
  int realizations = 0;
};

/// Normalized correlations <b_k^dag b_l> / sqrt(<n_k><n_l>) on the state
/// synthesized for each realization, averaged over `realizations` walks.
/// Realizations are seeded by (seed, index) so results do not depend on the
/// worker count.
CoherenceEstimate phase_walk_correlation(const PhaseWalkSpec& spec, int realizations);

/// Same with the photon number drawn per realization from Pi_m(nbar)
/// (zero-photon draws are skipped and redrawn).
CoherenceEstimate phase_walk_correlation_poisson(const PhaseWalkSpec& spec, double nbar, int realizations);

/// First-order coherence matrix <b_k^dag b_l> of a multimode state.
Eigen::MatrixXcd first_order_moments(const FockVector& state);

/// Phases phi(t_1..t_N) of one realization (phi(t_1) = 0).
std::vector<double> phase_walk(const PhaseWalkSpec& spec, std::uint64_t realization);

}  // namespace ecs
