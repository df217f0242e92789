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

#include <map>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "ecs/ecs_state.hpp"
#include "ecs/fock.hpp"

namespace ecs {

/// V = exp(i gamma n).
struct PhaseShiftProcess {
  double gamma = 0.0;
};

/// Loss to an ancilla mode through a splitter of intensity transmission
/// `transmission`, followed by exp(i gamma n). The ancilla is traced out.
struct AttenuatedPhaseProcess {
  double transmission = 1.0;
  double gamma = 0.0;
};

/// Arbitrary single-mode unitary given on the truncated space.
struct MatrixProcess {
  Eigen::MatrixXcd matrix;
};

using ProcessSpec = std::variant<PhaseShiftProcess, AttenuatedPhaseProcess, MatrixProcess>;

/// Common-source homodyne setup. The source |n) is split by U(theta, -pi/2)
/// into mode 0 (amplitude cos theta, the local oscillator for theta near 0)
/// and mode 1 (i sin theta). The process acts on mode 1, then both are mixed
/// on U(pi/4, mixer_phi) and counted as A (mode 0) and B (mode 1).
struct HomodyneConfig {
  int source_photons = 0;
  double splitter_theta = 0.0;  // defaults to arccos(0.95) via default_homodyne_config
  double mixer_phi = -1.5707963267948966;
  ProcessSpec process = PhaseShiftProcess{};
};

HomodyneConfig default_homodyne_config(int source_photons);

/// U(theta, -pi/2)|n, 0) on cutoff n per mode.
FockVector split_common_source(int n, double theta, int cutoff);

/// The same state from the circle representation, for cross-checks.
ECSState split_common_source_ecs(int n, double theta, int cutoff);

/// (e^{i theta} a + e^{-i theta} a^dag) / sqrt(2) on the truncated space.
Eigen::MatrixXcd quadrature_matrix(double theta_q, int cutoff);

struct DifferenceStats {
  std::map<int, double> distribution;  // A - B -> probability
  double mean = 0.0;
  double variance = 0.0;
  /// Largest |A + B + photons lost to the ancilla - n| over outcomes with
  /// nonzero probability; zero when photon number is conserved.
  int number_defect = 0;
};

DifferenceStats homodyne_difference_stats(const HomodyneConfig& config);

/// The process of `config` with its phase replaced by `gamma`.
HomodyneConfig with_gamma(const HomodyneConfig& config, double gamma);

struct ProcessScan {
  std::vector<double> gamma;
  std::vector<double> mean;
  std::vector<double> variance;
  /// Fit mean = c0 + c1 cos(gamma) + s1 sin(gamma).
  double c0 = 0.0;
  double c1 = 0.0;
  double s1 = 0.0;
  double r_squared = 0.0;
  /// Phase of the first harmonic, atan2(-s1, c1).
  double harmonic_phase = 0.0;
};

/// mean(A - B) over `gamma_grid`, where each point adds gamma to the
/// configured process phase. Requires a phase-shift or attenuated-phase process.
ProcessScan process_tomography_scan(const HomodyneConfig& config, const std::vector<double>& gamma_grid);

/// Offset of the configured process phase, recovered by comparing its scan
/// harmonic with that of the zero-offset reference; in (-pi, pi].
double recover_phase_offset(const HomodyneConfig& config, const std::vector<double>& gamma_grid);

}  // namespace ecs
