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

#include "ecs/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/distributions/poisson.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ecs/errors.hpp"

namespace ecs {

// ModeShape -----------------------------------------------------------------

ModeShape::ModeShape(std::vector<int> cutoffs) : cutoffs_(std::move(cutoffs)) {
  if (cutoffs_.empty()) throw ValidationError("ModeShape: mode_count must be at least 1");
  for (int c : cutoffs_) {
    if (c < 0) throw ValidationError("ModeShape: negative cutoff " + std::to_string(c));
  }
  strides_.assign(cutoffs_.size(), 1);
  std::size_t size = 1;
  for (std::size_t k = cutoffs_.size(); k-- > 0;) {
    strides_[k] = size;
    const std::size_t dim = static_cast<std::size_t>(cutoffs_[k]) + 1;
    if (size > kMaxBasisSize / dim) {
      const double per_mode = std::pow(static_cast<double>(kMaxBasisSize),
                                       1.0 / static_cast<double>(cutoffs_.size()));
      throw SizingError("ModeShape: basis size exceeds 2^24 entries; largest uniform cutoff for " +
                        std::to_string(cutoffs_.size()) + " modes is " +
                        std::to_string(static_cast<int>(std::floor(per_mode + 1e-9)) - 1));
    }
    size *= dim;
  }
  size_ = size;
}

ModeShape ModeShape::uniform(int mode_count, int cutoff) {
  if (mode_count < 1) throw ValidationError("ModeShape: mode_count must be at least 1");
  return ModeShape(std::vector<int>(static_cast<std::size_t>(mode_count), cutoff));
}

int ModeShape::total_capacity() const {
  int t = 0;
  for (int c : cutoffs_) t += c;
  return t;
}

std::size_t ModeShape::index(std::span<const int> occupation) const {
  if (occupation.size() != cutoffs_.size()) throw ValidationError("ModeShape::index: wrong mode count");
  std::size_t idx = 0;
  for (std::size_t k = 0; k < cutoffs_.size(); ++k) {
    if (occupation[k] < 0 || occupation[k] > cutoffs_[k]) {
      throw ValidationError("ModeShape::index: occupation " + std::to_string(occupation[k]) +
                            " outside cutoff of mode " + std::to_string(k));
    }
    idx += static_cast<std::size_t>(occupation[k]) * strides_[k];
  }
  return idx;
}

std::vector<int> ModeShape::occupation(std::size_t index) const {
  std::vector<int> occ(cutoffs_.size());
  for (std::size_t k = 0; k < cutoffs_.size(); ++k) {
    occ[k] = static_cast<int>(index / strides_[k]);
    index %= strides_[k];
  }
  return occ;
}

int ModeShape::occupation(std::size_t index, int mode) const {
  const auto m = static_cast<std::size_t>(mode);
  return static_cast<int>((index / strides_.at(m)) % (static_cast<std::size_t>(cutoffs_[m]) + 1));
}

ModeShape ModeShape::without(std::span<const int> modes) const {
  std::vector<int> keep;
  for (int k = 0; k < mode_count(); ++k) {
    if (std::find(modes.begin(), modes.end(), k) == modes.end()) keep.push_back(k);
  }
  return select(keep);
}

ModeShape ModeShape::select(std::span<const int> modes) const {
  std::vector<int> c;
  for (int m : modes) {
    if (m < 0 || m >= mode_count()) throw ValidationError("ModeShape::select: invalid mode " + std::to_string(m));
    c.push_back(cutoffs_[static_cast<std::size_t>(m)]);
  }
  return ModeShape(std::move(c));
}

ModeShape ModeShape::joined(const ModeShape& other) const {
  std::vector<int> c = cutoffs_;
  c.insert(c.end(), other.cutoffs_.begin(), other.cutoffs_.end());
  return ModeShape(std::move(c));
}

int default_cutoff(double nbar) {
  if (nbar < 0.0) throw DomainError("default_cutoff: negative nbar");
  return static_cast<int>(std::ceil(nbar + 10.0 * std::sqrt(nbar) + 10.0));
}

// FockVector ----------------------------------------------------------------

FockVector::FockVector(ModeShape shape, Eigen::VectorXcd amplitudes)
    : shape_(std::move(shape)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != shape_.size()) {
    throw ValidationError("FockVector: amplitude count does not match shape");
  }
}

FockVector::FockVector(ModeShape shape)
    : shape_(std::move(shape)), amplitudes_(Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(shape_.size()))) {}

cplx FockVector::amplitude(std::span<const int> occupation) const {
  return amplitudes_[static_cast<Eigen::Index>(shape_.index(occupation))];
}

FockVector FockVector::normalized() const {
  const double n = amplitudes_.norm();
  if (n == 0.0) throw ValidationError("FockVector::normalized: zero vector");
  return FockVector(shape_, amplitudes_ / n);
}

FockVector FockVector::scaled(cplx factor) const { return FockVector(shape_, amplitudes_ * factor); }

FockVector FockVector::reshaped(const ModeShape& target) const {
  if (target.mode_count() != shape_.mode_count()) throw ValidationError("FockVector::reshaped: mode count mismatch");
  FockVector out(target);
  for (std::size_t i = 0; i < shape_.size(); ++i) {
    const cplx a = amplitudes_[static_cast<Eigen::Index>(i)];
    if (a == cplx(0.0)) continue;
    const auto occ = shape_.occupation(i);
    bool inside = true;
    for (int k = 0; k < target.mode_count(); ++k) inside = inside && occ[static_cast<std::size_t>(k)] <= target.cutoff(k);
    if (inside) out.amplitudes_[static_cast<Eigen::Index>(target.index(occ))] = a;
  }
  return out;
}

// DensityMatrix -------------------------------------------------------------

DensityMatrix::DensityMatrix(ModeShape shape, Eigen::MatrixXcd entries)
    : shape_(std::move(shape)), entries_(std::move(entries)) {
  const auto n = static_cast<Eigen::Index>(shape_.size());
  if (entries_.rows() != n || entries_.cols() != n) throw ValidationError("DensityMatrix: entry matrix does not match shape");
}

double DensityMatrix::hermiticity_defect() const {
  if (entries_.size() == 0) return 0.0;
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

void DensityMatrix::validate(double tol) const {
  const double herm = hermiticity_defect();
  if (herm > tol) throw ValidationError("DensityMatrix: not Hermitian (defect " + std::to_string(herm) + ")");
  const Eigen::MatrixXcd h = 0.5 * (entries_ + entries_.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw ValidationError("DensityMatrix: negative eigenvalue " + std::to_string(es.eigenvalues().minCoeff()));
  }
  if (entries_.trace().real() > 1.0 + 1e-12) throw ValidationError("DensityMatrix: trace exceeds 1");
}

NumberDiagonalDensity::NumberDiagonalDensity(ModeShape shape, Eigen::VectorXd weights)
    : shape_(std::move(shape)), weights_(std::move(weights)) {
  if (static_cast<std::size_t>(weights_.size()) != shape_.size()) {
    throw ValidationError("NumberDiagonalDensity: weight count does not match shape");
  }
  if (weights_.size() > 0 && weights_.minCoeff() < 0.0) throw ValidationError("NumberDiagonalDensity: negative weight");
  if (weights_.sum() > 1.0 + 1e-12) throw ValidationError("NumberDiagonalDensity: weights sum above 1");
}

DensityMatrix NumberDiagonalDensity::to_density() const {
  return DensityMatrix(shape_, weights_.cast<cplx>().asDiagonal().toDenseMatrix());
}

// Poisson -------------------------------------------------------------------

double poisson_pmf(double nbar, int n) {
  if (nbar < 0.0 || !std::isfinite(nbar)) throw DomainError("poisson_pmf: nbar must be a finite nonnegative number");
  if (n < 0) throw DomainError("poisson_pmf: negative photon number");
  if (nbar == 0.0) return n == 0 ? 1.0 : 0.0;
  return boost::math::pdf(boost::math::poisson_distribution<double>(nbar), static_cast<double>(n));
}

double poisson_tail(double nbar, int cutoff) {
  if (nbar < 0.0) throw DomainError("poisson_tail: negative nbar");
  if (cutoff < 0) return 1.0;
  if (nbar == 0.0) return 0.0;
  // Below the mode the complement is small and well conditioned.
  if (cutoff < nbar) {
    double head = 0.0;
    for (int n = 0; n <= cutoff; ++n) head += poisson_pmf(nbar, n);
    return std::max(0.0, 1.0 - head);
  }
  double sum = 0.0;
  for (int n = cutoff + 1;; ++n) {
    const double t = poisson_pmf(nbar, n);
    sum += t;
    if (t <= sum * 1e-17 || t == 0.0) break;
  }
  return sum;
}

// States --------------------------------------------------------------------

FockVector coherent_amplitudes(cplx alpha, int cutoff) {
  if (cutoff < 0) throw ValidationError("coherent_amplitudes: negative cutoff");
  Eigen::VectorXcd amps(cutoff + 1);
  const double r = std::abs(alpha);
  if (r == 0.0) {
    amps.setZero();
    amps[0] = 1.0;
    return FockVector(ModeShape({cutoff}), amps);
  }
  const double arg = std::arg(alpha);
  const boost::math::poisson_distribution<double> pois(r * r);
  for (int n = 0; n <= cutoff; ++n) {
    const double mag = std::sqrt(boost::math::pdf(pois, static_cast<double>(n)));
    amps[n] = std::polar(mag, n * arg);
  }
  return FockVector(ModeShape({cutoff}), amps);
}

FockVector coherent_product(std::span<const cplx> alphas, const ModeShape& shape) {
  if (static_cast<int>(alphas.size()) != shape.mode_count()) {
    throw ValidationError("coherent_product: one amplitude per mode required");
  }
  std::vector<Eigen::VectorXcd> per_mode;
  for (int k = 0; k < shape.mode_count(); ++k) {
    per_mode.push_back(coherent_amplitudes(alphas[static_cast<std::size_t>(k)], shape.cutoff(k)).amplitudes());
  }
  Eigen::VectorXcd amps(static_cast<Eigen::Index>(shape.size()));
  for (std::size_t i = 0; i < shape.size(); ++i) {
    cplx v = 1.0;
    for (int k = 0; k < shape.mode_count(); ++k) v *= per_mode[static_cast<std::size_t>(k)][shape.occupation(i, k)];
    amps[static_cast<Eigen::Index>(i)] = v;
  }
  return FockVector(shape, amps);
}

FockVector basis_state(const ModeShape& shape, std::span<const int> occupation) {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(shape.size()));
  amps[static_cast<Eigen::Index>(shape.index(occupation))] = 1.0;
  return FockVector(shape, amps);
}

FockVector phase_shift(const FockVector& state, int mode, double delta) {
  const ModeShape& shape = state.shape();
  if (mode < 0 || mode >= shape.mode_count()) throw ValidationError("phase_shift: invalid mode");
  std::vector<cplx> factor(static_cast<std::size_t>(shape.cutoff(mode)) + 1);
  for (std::size_t n = 0; n < factor.size(); ++n) factor[n] = std::polar(1.0, delta * static_cast<double>(n));
  Eigen::VectorXcd amps = state.amplitudes();
  for (std::size_t i = 0; i < shape.size(); ++i) {
    amps[static_cast<Eigen::Index>(i)] *= factor[static_cast<std::size_t>(shape.occupation(i, mode))];
  }
  return FockVector(shape, amps);
}

namespace {

std::vector<int> resolve_modes(const ModeShape& shape, std::span<const int> modes) {
  std::vector<int> out;
  if (modes.empty()) {
    for (int k = 0; k < shape.mode_count(); ++k) out.push_back(k);
    return out;
  }
  for (int m : modes) {
    if (m < 0 || m >= shape.mode_count()) throw ValidationError("invalid mode index " + std::to_string(m));
    out.push_back(m);
  }
  return out;
}

std::vector<int> subset_totals(const ModeShape& shape, const std::vector<int>& modes) {
  std::vector<int> totals(shape.size());
  for (std::size_t i = 0; i < shape.size(); ++i) {
    int t = 0;
    for (int m : modes) t += shape.occupation(i, m);
    totals[i] = t;
  }
  return totals;
}

}  // namespace

DensityMatrix twirl(const DensityMatrix& rho, std::span<const int> modes) {
  const double defect = rho.hermiticity_defect();
  if (defect > 1e-10) throw ValidationError("twirl: input is not Hermitian (defect " + std::to_string(defect) + ")");
  const auto chosen = resolve_modes(rho.shape(), modes);
  const auto totals = subset_totals(rho.shape(), chosen);
  Eigen::MatrixXcd e = rho.entries();
  for (Eigen::Index j = 0; j < e.cols(); ++j) {
    for (Eigen::Index i = 0; i < e.rows(); ++i) {
      if (totals[static_cast<std::size_t>(i)] != totals[static_cast<std::size_t>(j)]) e(i, j) = 0.0;
    }
  }
  return DensityMatrix(rho.shape(), std::move(e));
}

double p_n_from_radial_P(const RadialP& p, int n, double tolerance) {
  if (n < 0) throw DomainError("p_n_from_radial_P: negative photon number");
  double result = 0.0;
  if (p.density && p.upper_bound > 0.0) {
    auto integrand = [&](double nbar) { return poisson_pmf(std::max(0.0, nbar), n) * p.density(nbar); };
    double error = 0.0;
    const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        integrand, 0.0, p.upper_bound, 20, 1e-13, &error);
    if (error > tolerance) throw NumericError("p_n_from_radial_P: quadrature did not converge", error);
    result += 2.0 * integral;
  }
  for (const auto& [nbar, w] : p.atoms) result += w * poisson_pmf(nbar, n);
  return result;
}

bool is_semiclassical(const RadialP& p, int samples) {
  for (const auto& atom : p.atoms) {
    if (atom.second < 0.0) return false;
  }
  if (!p.density || p.upper_bound <= 0.0) return true;
  for (int i = 0; i <= samples; ++i) {
    if (p.density(p.upper_bound * i / samples) < 0.0) return false;
  }
  return true;
}

// Multilinear algebra -------------------------------------------------------

FockVector tensor(const FockVector& a, const FockVector& b) {
  const ModeShape shape = a.shape().joined(b.shape());
  Eigen::VectorXcd amps(static_cast<Eigen::Index>(shape.size()));
  const auto nb = static_cast<Eigen::Index>(b.shape().size());
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) amps.segment(i * nb, nb) = a.amplitudes()[i] * b.amplitudes();
  return FockVector(shape, amps);
}

cplx inner(const FockVector& a, const FockVector& b) {
  if (!(a.shape() == b.shape())) throw ValidationError("inner: shape mismatch");
  return a.amplitudes().dot(b.amplitudes());
}

double fidelity(const FockVector& a, const FockVector& b) {
  const double na = a.norm_squared();
  const double nb = b.norm_squared();
  if (na == 0.0 || nb == 0.0) throw ValidationError("fidelity: zero vector");
  return std::norm(inner(a, b)) / (na * nb);
}

DensityMatrix to_density(const FockVector& a) {
  return DensityMatrix(a.shape(), a.amplitudes() * a.amplitudes().adjoint());
}

namespace {

// Splits every full index into (kept index, traced index).
void split_indices(const ModeShape& shape, const std::vector<int>& keep, const ModeShape& kept_shape,
                   const ModeShape& traced_shape, const std::vector<int>& traced,
                   std::vector<std::size_t>& kept_idx, std::vector<std::size_t>& traced_idx) {
  kept_idx.resize(shape.size());
  traced_idx.resize(shape.size());
  for (std::size_t i = 0; i < shape.size(); ++i) {
    std::size_t ki = 0;
    for (std::size_t k = 0; k < keep.size(); ++k) ki += static_cast<std::size_t>(shape.occupation(i, keep[k])) * kept_shape.stride(static_cast<int>(k));
    std::size_t ti = 0;
    for (std::size_t k = 0; k < traced.size(); ++k) ti += static_cast<std::size_t>(shape.occupation(i, traced[k])) * traced_shape.stride(static_cast<int>(k));
    kept_idx[i] = ki;
    traced_idx[i] = ti;
  }
}

std::vector<int> validated_keep(const ModeShape& shape, std::span<const int> keep) {
  if (keep.empty()) throw ValidationError("partial_trace: keep at least one mode");
  std::vector<int> k(keep.begin(), keep.end());
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] < 0 || k[i] >= shape.mode_count()) throw ValidationError("partial_trace: invalid mode");
    for (std::size_t j = 0; j < i; ++j) {
      if (k[i] == k[j]) throw ValidationError("partial_trace: repeated mode");
    }
  }
  return k;
}

}  // namespace

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const ModeShape& shape = rho.shape();
  const auto kept = validated_keep(shape, keep);
  std::vector<int> traced;
  for (int k = 0; k < shape.mode_count(); ++k) {
    if (std::find(kept.begin(), kept.end(), k) == kept.end()) traced.push_back(k);
  }
  const ModeShape kept_shape = shape.select(kept);
  if (traced.empty()) {
    // Pure permutation of modes.
    std::vector<std::size_t> perm(shape.size());
    for (std::size_t i = 0; i < shape.size(); ++i) {
      std::size_t ki = 0;
      for (std::size_t k = 0; k < kept.size(); ++k) ki += static_cast<std::size_t>(shape.occupation(i, kept[k])) * kept_shape.stride(static_cast<int>(k));
      perm[i] = ki;
    }
    Eigen::MatrixXcd out(rho.entries().rows(), rho.entries().cols());
    for (std::size_t j = 0; j < shape.size(); ++j)
      for (std::size_t i = 0; i < shape.size(); ++i)
        out(static_cast<Eigen::Index>(perm[i]), static_cast<Eigen::Index>(perm[j])) = rho.entries()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    return DensityMatrix(kept_shape, out);
  }
  const ModeShape traced_shape = shape.select(traced);
  std::vector<std::size_t> ki, ti;
  split_indices(shape, kept, kept_shape, traced_shape, traced, ki, ti);
  std::vector<std::vector<std::size_t>> groups(traced_shape.size());
  for (std::size_t i = 0; i < shape.size(); ++i) groups[ti[i]].push_back(i);
  const auto d = static_cast<Eigen::Index>(kept_shape.size());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& g : groups) {
    for (std::size_t j : g) {
      for (std::size_t i : g) {
        out(static_cast<Eigen::Index>(ki[i]), static_cast<Eigen::Index>(ki[j])) +=
            rho.entries()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
    }
  }
  return DensityMatrix(kept_shape, out);
}

DensityMatrix partial_trace(const FockVector& state, std::span<const int> keep) {
  const ModeShape& shape = state.shape();
  const auto kept = validated_keep(shape, keep);
  std::vector<int> traced;
  for (int k = 0; k < shape.mode_count(); ++k) {
    if (std::find(kept.begin(), kept.end(), k) == kept.end()) traced.push_back(k);
  }
  const ModeShape kept_shape = shape.select(kept);
  if (traced.empty()) return partial_trace(to_density(state), keep);
  const ModeShape traced_shape = shape.select(traced);
  std::vector<std::size_t> ki, ti;
  split_indices(shape, kept, kept_shape, traced_shape, traced, ki, ti);
  Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(kept_shape.size()),
                                                static_cast<Eigen::Index>(traced_shape.size()));
  for (std::size_t i = 0; i < shape.size(); ++i) {
    psi(static_cast<Eigen::Index>(ki[i]), static_cast<Eigen::Index>(ti[i])) = state.amplitudes()[static_cast<Eigen::Index>(i)];
  }
  return DensityMatrix(kept_shape, psi * psi.adjoint());
}

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ValidationError("trace_distance: size mismatch");
  if (a.size() == 0) return 0.0;
  const Eigen::MatrixXcd d = a - b;
  const Eigen::MatrixXcd h = 0.5 * (d + d.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

std::vector<double> total_number_distribution(const FockVector& state, std::span<const int> modes) {
  const auto chosen = resolve_modes(state.shape(), modes);
  int cap = 0;
  for (int m : chosen) cap += state.shape().cutoff(m);
  std::vector<double> p(static_cast<std::size_t>(cap) + 1, 0.0);
  const auto totals = subset_totals(state.shape(), chosen);
  for (std::size_t i = 0; i < state.shape().size(); ++i) p[static_cast<std::size_t>(totals[i])] += std::norm(state[i]);
  return p;
}

Eigen::VectorXd schmidt_coefficients(const FockVector& state, std::span<const int> first_modes) {
  const DensityMatrix reduced = partial_trace(state, first_modes);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(reduced.entries(), Eigen::EigenvaluesOnly);
  Eigen::VectorXd ev = es.eigenvalues().reverse().cwiseMax(0.0).cwiseSqrt();
  const double n = ev.norm();
  return n > 0.0 ? Eigen::VectorXd(ev / n) : ev;
}

double entanglement_entropy(const FockVector& state, std::span<const int> first_modes) {
  const Eigen::VectorXd c = schmidt_coefficients(state, first_modes);
  double s = 0.0;
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    const double p = c[i] * c[i];
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

Eigen::MatrixXcd annihilation_matrix(int cutoff) {
  if (cutoff < 0) throw ValidationError("annihilation_matrix: negative cutoff");
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
  for (int n = 1; n <= cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

}  // namespace ecs
