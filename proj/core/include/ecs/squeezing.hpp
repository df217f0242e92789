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

#include <vector>

#include <Eigen/Dense>

#include "ecs/ecs_state.hpp"
#include "ecs/fock.hpp"

namespace ecs {

/// Largest tail weight beyond the cutoff accepted by two_mode_squeezed_vac.
inline constexpr double kSqueezeTailTolerance = 1e-8;

/// Pair-ladder coefficients c_k of U_sq(chi)|0,0) = sum_k c_k |k,k), with
/// U_sq(chi) = exp(chi^* a b - chi a^dag b^dag), from a Taylor-series
/// exponential on a ladder of `ladder` rungs (k = 0..ladder-1).
Eigen::VectorXcd squeezed_ladder(cplx chi, int ladder);

/// U_sq(chi)|0,0) on cutoff x cutoff. Throws SizingError naming the required
/// cutoff when the weight beyond it exceeds 1e-8.
FockVector two_mode_squeezed_vac(cplx chi, int cutoff);

/// Generator block of exp(zeta^* t c^dag a b - zeta t c a^dag b^dag) on the
/// sector |n - k)_c |k, k)_ab, k = 0..n.
Eigen::MatrixXcd three_mode_generator(int pump_n, cplx zeta_t);

/// Exact evolution of |n)_c |0,0)_ab on modes (c, a, b) with the given cutoff.
FockVector exact_three_mode_evolution(int pump_n, cplx zeta_t, int cutoff);

/// Circle representation with a squeezed pair attached at each phase:
///   Pi_n(n)^{-1/2} \int dphi/2pi e^{-i n phi} |sqrt(n) e^{i phi}>_c |chi(phi)>_ab,
/// chi(phi) = sqrt(n) zeta_t e^{i phi}. Modes are (c, a, b); the pair is
/// truncated at `cutoff` without renormalization.
ECSState pump_entangled_squeezed(int n, cplx zeta_t, int cutoff, int grid_size = 0);

struct PumpEntangledSynthesis {
  FockVector state;           // renormalized
  double norm_deficit = 0.0;  // 1 - norm^2 before renormalization
};
PumpEntangledSynthesis synthesize_pump_entangled(int n, cplx zeta_t, int cutoff);

/// Reduced state of modes (a, b) of a (c, a, b) state.
DensityMatrix reduced_ab_density(const FockVector& state);

/// Diagonal weights w_k = <k,k| rho |k,k> of a pair density.
std::vector<double> pair_weights(const DensityMatrix& rho_ab);

}  // namespace ecs
