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

#include "ecs/ecs_state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ecs/errors.hpp"

namespace ecs {

PhaseGrid::PhaseGrid(int size) : size_(size) {
  if (size < 1) throw ValidationError("PhaseGrid: size must be positive");
}

double PhaseGrid::phase(int k) const { return kTwoPi * k / size_; }

int default_grid_size(int cutoff) { return 4 * cutoff + 4; }

ECSState::ECSState(std::vector<PhaseGrid> grids, std::vector<int> orientation, Eigen::MatrixXcd coefficients,
                   std::vector<cplx> weight, std::vector<FrequencyBand> weight_bands,
                   std::optional<AttachedStates> attached)
    : grids_(std::move(grids)),
      orientation_(std::move(orientation)),
      coefficients_(std::move(coefficients)),
      weight_(std::move(weight)),
      weight_bands_(std::move(weight_bands)),
      attached_(std::move(attached)) {
  const std::size_t v = grids_.size();
  if (v == 0) throw ValidationError("ECSState: at least one phase variable required");
  if (orientation_.size() != v || weight_bands_.size() != v) throw ValidationError("ECSState: per-variable data size mismatch");
  for (int s : orientation_) {
    if (s != 1 && s != -1) throw ValidationError("ECSState: orientation must be +1 or -1");
  }
  if (static_cast<std::size_t>(coefficients_.cols()) != v) throw ValidationError("ECSState: coefficient columns must equal variable count");
  std::size_t points = 1;
  for (const auto& g : grids_) points *= static_cast<std::size_t>(g.size());
  if (weight_.size() != points) throw ValidationError("ECSState: weight table size does not match grids");
  if (attached_) {
    if (attached_->states.size() != points) throw ValidationError("ECSState: one attached state per grid point required");
    if (attached_->bands.size() != v) throw ValidationError("ECSState: attached bands per variable required");
    for (const auto& s : attached_->states) {
      if (!(s.shape() == attached_->states.front().shape())) throw ValidationError("ECSState: attached shapes differ");
    }
  }
}

int ECSState::attached_mode_count() const {
  return attached_ ? attached_->states.front().shape().mode_count() : 0;
}

std::vector<double> ECSState::phases(std::size_t point) const {
  std::vector<double> out(grids_.size());
  for (std::size_t v = grids_.size(); v-- > 0;) {
    const auto m = static_cast<std::size_t>(grids_[v].size());
    out[v] = grids_[v].phase(static_cast<int>(point % m));
    point /= m;
  }
  return out;
}

Eigen::VectorXcd ECSState::amplitudes(std::size_t point) const {
  const auto ph = phases(point);
  Eigen::VectorXcd e(static_cast<Eigen::Index>(ph.size()));
  for (std::size_t v = 0; v < ph.size(); ++v) e[static_cast<Eigen::Index>(v)] = std::polar(1.0, orientation_[v] * ph[v]);
  return coefficients_ * e;
}

std::vector<int> ECSState::required_grid_sizes(const ModeShape& shape) const {
  if (shape.mode_count() != mode_count() + attached_mode_count()) {
    throw ValidationError("ecs_to_fock: shape has " + std::to_string(shape.mode_count()) + " modes, state has " +
                          std::to_string(mode_count() + attached_mode_count()));
  }
  std::vector<int> out(grids_.size());
  for (std::size_t v = 0; v < grids_.size(); ++v) {
    int span = 0;
    for (int j = 0; j < mode_count(); ++j) {
      if (coefficients_(j, static_cast<Eigen::Index>(v)) != cplx(0.0)) span += shape.cutoff(j);
    }
    long lo = weight_bands_[v].lo;
    long hi = weight_bands_[v].hi;
    if (attached_) {
      lo += attached_->bands[v].lo;
      hi += attached_->bands[v].hi;
    }
    if (orientation_[v] > 0) {
      hi += span;
    } else {
      lo -= span;
    }
    out[v] = static_cast<int>(std::max(std::abs(lo), std::abs(hi)) + 1);
  }
  return out;
}

ECSState ECSState::with_coefficients(Eigen::MatrixXcd coefficients) const {
  return ECSState(grids_, orientation_, std::move(coefficients), weight_, weight_bands_, attached_);
}

ECSState number_state_on_circle(int n, int m_radius, int cutoff, int grid_size) {
  if (n < 0) throw DomainError("number_state_on_circle: negative photon number");
  if (m_radius < 0) throw DomainError("number_state_on_circle: negative radius");
  if (m_radius == 0 && n > 0) throw DomainError("number_state_on_circle: a circle of radius 0 has no n-photon content");
  if (cutoff < n) throw ValidationError("number_state_on_circle: cutoff below n");
  const PhaseGrid grid(grid_size > 0 ? grid_size : default_grid_size(cutoff));
  const double norm = 1.0 / std::sqrt(poisson_pmf(m_radius, n));
  std::vector<cplx> w(static_cast<std::size_t>(grid.size()));
  for (int k = 0; k < grid.size(); ++k) w[static_cast<std::size_t>(k)] = std::polar(norm, -n * grid.phase(k));
  Eigen::MatrixXcd coeff(1, 1);
  coeff(0, 0) = std::sqrt(static_cast<double>(m_radius));
  return ECSState({grid}, {1}, coeff, std::move(w), {{-n, -n}});
}

ECSState two_mode_circle(int n, int n_prime, int cutoff, int grid_size) {
  const ECSState a = number_state_on_circle(n, n, cutoff, grid_size);
  const ECSState b = number_state_on_circle(n_prime, n_prime, cutoff, grid_size);
  const auto& wa = a.weight();
  const auto& wb = b.weight();
  std::vector<cplx> w;
  w.reserve(wa.size() * wb.size());
  for (cplx x : wa) {
    for (cplx y : wb) w.push_back(x * y);
  }
  Eigen::MatrixXcd coeff = Eigen::MatrixXcd::Zero(2, 2);
  coeff(0, 0) = a.coefficients()(0, 0);
  coeff(1, 1) = b.coefficients()(0, 0);
  return ECSState({a.grids()[0], b.grids()[0]}, {1, 1}, coeff, std::move(w),
                  {a.weight_bands()[0], b.weight_bands()[0]});
}

ECSState ecs_apply_coupler(const ECSState& state, std::pair<int, int> modes, const CouplerParams& params) {
  const auto [i, j] = modes;
  if (i == j || i < 0 || j < 0 || i >= state.mode_count() || j >= state.mode_count()) {
    throw ValidationError("ecs_apply_coupler: invalid mode pair");
  }
  const Eigen::Matrix2cd m = heisenberg_matrix(params);
  Eigen::MatrixXcd c = state.coefficients();
  const Eigen::RowVectorXcd ri = c.row(i);
  const Eigen::RowVectorXcd rj = c.row(j);
  c.row(i) = m(0, 0) * ri + m(0, 1) * rj;
  c.row(j) = m(1, 0) * ri + m(1, 1) * rj;
  return state.with_coefficients(std::move(c));
}

ECSState ecs_apply_phase(const ECSState& state, int mode, double delta) {
  if (mode < 0 || mode >= state.mode_count()) throw ValidationError("ecs_apply_phase: invalid mode");
  Eigen::MatrixXcd c = state.coefficients();
  c.row(mode) *= std::polar(1.0, delta);
  return state.with_coefficients(std::move(c));
}

FockVector ecs_to_fock(const ECSState& state, const ModeShape& shape) {
  const auto required = state.required_grid_sizes(shape);
  for (std::size_t v = 0; v < required.size(); ++v) {
    if (state.grids()[v].size() < required[v]) {
      throw ValidationError("ecs_to_fock: phase variable " + std::to_string(v) + " has grid size " +
                            std::to_string(state.grids()[v].size()) + ", exact synthesis requires M >= " +
                            std::to_string(required[v]));
    }
  }
  const int k_modes = state.mode_count();
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(shape.size()));
  double scale = 1.0;
  for (const auto& g : state.grids()) scale *= g.weight();

  std::vector<int> coherent_cutoffs(shape.cutoffs().begin(), shape.cutoffs().begin() + k_modes);
  std::vector<int> attached_cutoffs(shape.cutoffs().begin() + k_modes, shape.cutoffs().end());
  if (state.attached() && state.attached()->states.front().shape().cutoffs() != attached_cutoffs) {
    throw ValidationError("ecs_to_fock: attached cutoffs do not match shape");
  }
  Eigen::VectorXcd product;
  Eigen::VectorXcd next;
  for (std::size_t p = 0; p < state.point_count(); ++p) {
    const cplx w = state.weight()[p];
    if (w == cplx(0.0)) continue;
    const Eigen::VectorXcd amps = state.amplitudes(p);
    product.setConstant(1, w * scale);
    for (int j = 0; j < k_modes; ++j) {
      const FockVector coh = coherent_amplitudes(amps[j], coherent_cutoffs[static_cast<std::size_t>(j)]);
      const Eigen::VectorXcd& f = coh.amplitudes();
      next.resize(product.size() * f.size());
      for (Eigen::Index a = 0; a < product.size(); ++a) next.segment(a * f.size(), f.size()) = product[a] * f;
      product.swap(next);
    }
    if (state.attached()) {
      const Eigen::VectorXcd& f = state.attached()->states[p].amplitudes();
      next.resize(product.size() * f.size());
      for (Eigen::Index a = 0; a < product.size(); ++a) next.segment(a * f.size(), f.size()) = product[a] * f;
      product.swap(next);
    }
    acc += product;
  }
  return FockVector(shape, std::move(acc));
}

FockVector ecs_to_fock(const ECSState& state, int cutoff) {
  return ecs_to_fock(state, ModeShape::uniform(state.mode_count() + state.attached_mode_count(), cutoff));
}

}  // namespace ecs
