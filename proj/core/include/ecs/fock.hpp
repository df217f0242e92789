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

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ecs/numeric.hpp"

namespace ecs {

/// Hard limit on the number of basis states of any truncated space.
inline constexpr std::size_t kMaxBasisSize = std::size_t{1} << 24;

/// Per-mode photon-number cutoffs of a truncated multimode Fock space.
///
/// Basis states are stored row-major over (n_1, ..., n_K): the last mode
/// varies fastest. Construction enforces kMaxBasisSize and reports the
/// largest uniform cutoff that would fit.
class ModeShape {
 public:
  explicit ModeShape(std::vector<int> cutoffs);
  static ModeShape uniform(int mode_count, int cutoff);

  int mode_count() const { return static_cast<int>(cutoffs_.size()); }
  int cutoff(int mode) const { return cutoffs_.at(static_cast<std::size_t>(mode)); }
  const std::vector<int>& cutoffs() const { return cutoffs_; }
  std::size_t size() const { return size_; }
  std::size_t stride(int mode) const { return strides_.at(static_cast<std::size_t>(mode)); }

  /// Sum of cutoffs: the largest total photon number representable.
  int total_capacity() const;

  std::size_t index(std::span<const int> occupation) const;
  std::vector<int> occupation(std::size_t index) const;
  /// Photon number of `mode` in basis state `index`.
  int occupation(std::size_t index, int mode) const;

  /// Shape with the listed modes removed, in order of appearance.
  ModeShape without(std::span<const int> modes) const;
  /// Shape restricted to the listed modes, in the given order.
  ModeShape select(std::span<const int> modes) const;
  /// Concatenation of two shapes.
  ModeShape joined(const ModeShape& other) const;

  bool operator==(const ModeShape& other) const { return cutoffs_ == other.cutoffs_; }

 private:
  std::vector<int> cutoffs_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
};

/// Default single-mode cutoff for coherent content of mean photon number nbar:
/// nbar + 10 sqrt(nbar) + 10, rounded up.
int default_cutoff(double nbar);

/// Pure state on a truncated multimode Fock space.
class FockVector {
 public:
  FockVector(ModeShape shape, Eigen::VectorXcd amplitudes);
  /// All-zero vector.
  explicit FockVector(ModeShape shape);

  const ModeShape& shape() const { return shape_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  cplx amplitude(std::span<const int> occupation) const;
  cplx operator[](std::size_t index) const { return amplitudes_[static_cast<Eigen::Index>(index)]; }

  double norm_squared() const { return amplitudes_.squaredNorm(); }
  /// Returns a unit-norm copy; |norm^2 - 1| <= 1e-12 afterwards.
  FockVector normalized() const;
  /// Copy with every amplitude multiplied by `factor`.
  FockVector scaled(cplx factor) const;

  /// Same amplitudes on a shape with equal or larger cutoffs (zero padded),
  /// or smaller cutoffs (hard truncation).
  FockVector reshaped(const ModeShape& target) const;

 private:
  ModeShape shape_;
  Eigen::VectorXcd amplitudes_;
};

/// Density operator on a truncated multimode Fock space.
class DensityMatrix {
 public:
  DensityMatrix(ModeShape shape, Eigen::MatrixXcd entries);

  const ModeShape& shape() const { return shape_; }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  cplx trace() const { return entries_.trace(); }

  /// Largest |rho - rho^dagger| entry.
  double hermiticity_defect() const;
  /// Throws ValidationError unless Hermitian to `tol`, positive to
  /// -1e-10 and of trace at most 1 + 1e-12.
  void validate(double tol = 1e-10) const;

 private:
  ModeShape shape_;
  Eigen::MatrixXcd entries_;
};

/// rho = sum_n p_n |n)(n| over multimode photon numbers.
class NumberDiagonalDensity {
 public:
  NumberDiagonalDensity(ModeShape shape, Eigen::VectorXd weights);

  const ModeShape& shape() const { return shape_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  double total() const { return weights_.sum(); }
  DensityMatrix to_density() const;

 private:
  ModeShape shape_;
  Eigen::VectorXd weights_;
};

/// Radial Glauber-Sudarshan function of a phase-invariant source, written as
/// a function of nbar = |alpha|^2, with optional point masses.
///
/// The represented number distribution is
///   p_n = 2 \int_0^upper dnbar Pi_n(nbar) density(nbar) + sum_j w_j Pi_n(nbar_j),
/// so a normalized source satisfies 2 \int density + sum_j w_j = 1.
struct RadialP {
  std::function<double(double)> density;
  double upper_bound = 0.0;
  std::vector<std::pair<double, double>> atoms;  // (nbar_j, w_j)
};

// Poisson statistics --------------------------------------------------------

/// e^{-nbar} nbar^n / n!, evaluated in log space. Throws DomainError for nbar < 0.
double poisson_pmf(double nbar, int n);

/// 1 - sum_{n <= cutoff} Pi_n(nbar), computed from the upper tail directly.
double poisson_tail(double nbar, int cutoff);

// States --------------------------------------------------------------------

/// Single-mode coherent state e^{-|a|^2/2} a^n / sqrt(n!) for n <= cutoff.
FockVector coherent_amplitudes(cplx alpha, int cutoff);

/// Product coherent state |a_1, ..., a_K> on the given shape.
FockVector coherent_product(std::span<const cplx> alphas, const ModeShape& shape);

/// |n_1, ..., n_K).
FockVector basis_state(const ModeShape& shape, std::span<const int> occupation);

/// Multiplies each amplitude by exp(i delta n_mode).
FockVector phase_shift(const FockVector& state, int mode, double delta);

/// Phase average over a common phase on `modes` (all modes when empty):
/// zeroes every entry joining basis states of unequal total photon number in
/// those modes. Throws ValidationError on non-Hermitian input.
DensityMatrix twirl(const DensityMatrix& rho, std::span<const int> modes = {});

/// p_n from a radial P function by adaptive Gauss-Kronrod quadrature.
/// Throws NumericError when the error estimate exceeds `tolerance`.
double p_n_from_radial_P(const RadialP& p, int n, double tolerance = 1e-10);

/// True when density >= 0 at `samples` equally spaced points and all atoms
/// carry nonnegative weight.
bool is_semiclassical(const RadialP& p, int samples = 1000);

// Multilinear algebra -------------------------------------------------------

FockVector tensor(const FockVector& a, const FockVector& b);
cplx inner(const FockVector& a, const FockVector& b);
/// |<a|b>|^2 / (<a|a><b|b>).
double fidelity(const FockVector& a, const FockVector& b);
DensityMatrix to_density(const FockVector& a);
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
/// Reduced density of a pure state, without forming the full projector.
DensityMatrix partial_trace(const FockVector& state, std::span<const int> keep);

/// Half the trace norm of a - b (Hermitian eigen-decomposition).
double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// Probability distribution of the total photon number in `modes` (all when empty).
std::vector<double> total_number_distribution(const FockVector& state,
                                              std::span<const int> modes = {});

/// Schmidt coefficients (descending) across the cut first_modes | rest.
Eigen::VectorXd schmidt_coefficients(const FockVector& state, std::span<const int> first_modes);

/// Von Neumann entropy (nats) of the reduced state of `first_modes`.
double entanglement_entropy(const FockVector& state, std::span<const int> first_modes);

/// Truncated single-mode annihilation operator: a(n-1, n) = sqrt(n).
Eigen::MatrixXcd annihilation_matrix(int cutoff);

}  // namespace ecs
