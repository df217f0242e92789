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

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ecs/coupling.hpp"
#include "ecs/fock.hpp"

namespace ecs {

/// M equally spaced phases 2 pi k / M with quadrature weight 1/M each.
class PhaseGrid {
 public:
  explicit PhaseGrid(int size);
  int size() const { return size_; }
  double phase(int k) const;
  double weight() const { return 1.0 / size_; }

 private:
  int size_;
};

/// Default grid size for content up to `cutoff` photons: 4 cutoff + 4.
int default_grid_size(int cutoff);

/// Inclusive range of Fourier frequencies in one phase variable.
struct FrequencyBand {
  int lo = 0;
  int hi = 0;
};

/// Per-point state on modes that are not coherent (for example a squeezed
/// pair attached to a pump phase). `band[v]` bounds the Fourier frequencies
/// of its amplitudes in phase variable v.
struct AttachedStates {
  std::vector<FockVector> states;  // one per grid point
  std::vector<FrequencyBand> bands;
};

/// Entangled coherent state representation:
///   |psi> = sum_points w(phi) |a_1(phi), ..., a_K(phi)> (x) |attached(phi)>  / prod_v M_v
/// with a_j(phi) = sum_v coefficients(j, v) exp(i s_v phi_v) and s_v = +-1
/// the orientation of phase variable v.
///
/// The weight is tabulated row-major over the grid product (last variable
/// fastest). `weight_bands` declare its Fourier support, which fixes the grid
/// size needed for exact synthesis.
class ECSState {
 public:
  ECSState(std::vector<PhaseGrid> grids, std::vector<int> orientation, Eigen::MatrixXcd coefficients,
           std::vector<cplx> weight, std::vector<FrequencyBand> weight_bands,
           std::optional<AttachedStates> attached = std::nullopt);

  int variable_count() const { return static_cast<int>(grids_.size()); }
  int mode_count() const { return static_cast<int>(coefficients_.rows()); }
  int attached_mode_count() const;
  std::size_t point_count() const { return weight_.size(); }

  const std::vector<PhaseGrid>& grids() const { return grids_; }
  const std::vector<int>& orientation() const { return orientation_; }
  const Eigen::MatrixXcd& coefficients() const { return coefficients_; }
  const std::vector<cplx>& weight() const { return weight_; }
  const std::vector<FrequencyBand>& weight_bands() const { return weight_bands_; }
  const std::optional<AttachedStates>& attached() const { return attached_; }

  /// Phases of the variables at a flattened grid point.
  std::vector<double> phases(std::size_t point) const;
  /// Coherent amplitudes of every mode at a flattened grid point.
  Eigen::VectorXcd amplitudes(std::size_t point) const;

  /// Smallest grid size per variable giving exact synthesis on `shape`.
  std::vector<int> required_grid_sizes(const ModeShape& shape) const;

  /// Same representation with new coherent-amplitude coefficients.
  ECSState with_coefficients(Eigen::MatrixXcd coefficients) const;

 private:
  std::vector<PhaseGrid> grids_;
  std::vector<int> orientation_;
  Eigen::MatrixXcd coefficients_;
  std::vector<cplx> weight_;
  std::vector<FrequencyBand> weight_bands_;
  std::optional<AttachedStates> attached_;
};

/// |n) = Pi_n(m)^{-1/2} \int dphi/2pi e^{-i n phi} |sqrt(m) e^{i phi}>.
/// n = 0 with m = 0 gives the vacuum. grid_size 0 selects default_grid_size(cutoff).
ECSState number_state_on_circle(int n, int m_radius, int cutoff, int grid_size = 0);

/// Product of two independent circles for |n, n'), radii m = n and m' = n'.
ECSState two_mode_circle(int n, int n_prime, int cutoff, int grid_size = 0);

/// Maps each point's amplitudes through heisenberg_matrix; the weight is untouched.
ECSState ecs_apply_coupler(const ECSState& state, std::pair<int, int> modes, const CouplerParams& params);

/// Multiplies the amplitude of `mode` by e^{i delta} at every point.
ECSState ecs_apply_phase(const ECSState& state, int mode, double delta);

/// Discrete quadrature of the representation on a truncated space. The
/// coherent modes come first in `shape`, attached modes after. Throws
/// ValidationError naming the required grid size when a grid is too small.
FockVector ecs_to_fock(const ECSState& state, const ModeShape& shape);
FockVector ecs_to_fock(const ECSState& state, int cutoff);

}  // namespace ecs
