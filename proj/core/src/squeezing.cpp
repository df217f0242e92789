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

#include "ecs/squeezing.hpp"

#include <cmath>
#include <string>

#include "ecs/errors.hpp"

namespace ecs {

Eigen::VectorXcd squeezed_ladder(cplx chi, int ladder) {
  if (ladder < 1) throw ValidationError("squeezed_ladder: ladder must have at least one rung");
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(ladder, ladder);
  for (int k = 0; k + 1 < ladder; ++k) {
    g(k + 1, k) = -chi * static_cast<double>(k + 1);
    g(k, k + 1) = std::conj(chi) * static_cast<double>(k + 1);
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(ladder);
  v[0] = 1.0;
  return expm_apply(g, v);
}

FockVector two_mode_squeezed_vac(cplx chi, int cutoff) {
  if (cutoff < 0) throw ValidationError("two_mode_squeezed_vac: negative cutoff");
  // An enlarged ladder keeps the artificial top rung far from the kept range.
  const int ladder = 2 * cutoff + 40;
  const Eigen::VectorXcd c = squeezed_ladder(chi, ladder);
  double tail = 0.0;
  for (int k = cutoff + 1; k < ladder; ++k) tail += std::norm(c[k]);
  if (tail > kSqueezeTailTolerance) {
    int need = cutoff;
    double t = tail;
    while (t > kSqueezeTailTolerance && need + 1 < ladder) {
      ++need;
      t -= std::norm(c[need]);
    }
    throw SizingError("two_mode_squeezed_vac: tail " + std::to_string(tail) + " beyond cutoff " + std::to_string(cutoff) +
                      "; cutoff " + std::to_string(need) + " is required");
  }
  const ModeShape shape({cutoff, cutoff});
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(shape.size()));
  for (int k = 0; k <= cutoff; ++k) amps[static_cast<Eigen::Index>(shape.index(std::vector<int>{k, k}))] = c[k];
  return FockVector(shape, amps);
}

Eigen::MatrixXcd three_mode_generator(int pump_n, cplx zeta_t) {
  if (pump_n < 0) throw DomainError("three_mode_generator: negative pump photon number");
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(pump_n + 1, pump_n + 1);
  for (int k = 0; k < pump_n; ++k) {
    const double amp = std::sqrt(static_cast<double>(pump_n - k)) * (k + 1);
    g(k + 1, k) = -zeta_t * amp;
    g(k, k + 1) = std::conj(zeta_t) * amp;
  }
  return g;
}

FockVector exact_three_mode_evolution(int pump_n, cplx zeta_t, int cutoff) {
  if (cutoff < pump_n) throw ValidationError("exact_three_mode_evolution: cutoff below pump photon number");
  const ModeShape shape = ModeShape::uniform(3, cutoff);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(pump_n + 1);
  v[0] = 1.0;
  const Eigen::VectorXcd out = expm_series(three_mode_generator(pump_n, zeta_t)) * v;
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(shape.size()));
  for (int k = 0; k <= pump_n; ++k) amps[static_cast<Eigen::Index>(shape.index(std::vector<int>{pump_n - k, k, k}))] = out[k];
  return FockVector(shape, amps);
}

ECSState pump_entangled_squeezed(int n, cplx zeta_t, int cutoff, int grid_size) {
  if (n < 1) throw DomainError("pump_entangled_squeezed: pump photon number must be at least 1");
  if (cutoff < n) throw ValidationError("pump_entangled_squeezed: cutoff below n");
  const int required = 2 * cutoff + 1;
  const PhaseGrid grid(grid_size > 0 ? grid_size : std::max(default_grid_size(cutoff), required));
  const double norm = 1.0 / std::sqrt(poisson_pmf(n, n));
  const int ladder = 2 * cutoff + 40;
  const ModeShape pair({cutoff, cutoff});
  std::vector<cplx> w(static_cast<std::size_t>(grid.size()));
  AttachedStates attached;
  attached.bands = {{0, cutoff}};
  for (int k = 0; k < grid.size(); ++k) {
    const double phi = grid.phase(k);
    w[static_cast<std::size_t>(k)] = std::polar(norm, -n * phi);
    const cplx chi = std::sqrt(static_cast<double>(n)) * zeta_t * std::polar(1.0, phi);
    const Eigen::VectorXcd c = squeezed_ladder(chi, ladder);
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(pair.size()));
    for (int j = 0; j <= cutoff; ++j) amps[static_cast<Eigen::Index>(pair.index(std::vector<int>{j, j}))] = c[j];
    attached.states.emplace_back(pair, amps);
  }
  Eigen::MatrixXcd coeff(1, 1);
  coeff(0, 0) = std::sqrt(static_cast<double>(n));
  return ECSState({grid}, {1}, coeff, std::move(w), {{-n, -n}}, std::move(attached));
}

PumpEntangledSynthesis synthesize_pump_entangled(int n, cplx zeta_t, int cutoff) {
  const FockVector raw = ecs_to_fock(pump_entangled_squeezed(n, zeta_t, cutoff), ModeShape::uniform(3, cutoff));
  const double n2 = raw.norm_squared();
  return {raw.normalized(), 1.0 - n2};
}

DensityMatrix reduced_ab_density(const FockVector& state) {
  if (state.shape().mode_count() != 3) throw ValidationError("reduced_ab_density: expected modes (c, a, b)");
  return partial_trace(state, std::vector<int>{1, 2});
}

std::vector<double> pair_weights(const DensityMatrix& rho_ab) {
  const ModeShape& s = rho_ab.shape();
  if (s.mode_count() != 2) throw ValidationError("pair_weights: two-mode density required");
  std::vector<double> w;
  for (int k = 0; k <= std::min(s.cutoff(0), s.cutoff(1)); ++k) {
    const auto i = static_cast<Eigen::Index>(s.index(std::vector<int>{k, k}));
    w.push_back(rho_ab.entries()(i, i).real());
  }
  return w;
}

}  // namespace ecs
