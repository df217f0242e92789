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

#include "ecs/numeric.hpp"

#include <cmath>
#include <vector>

#include "ecs/errors.hpp"

namespace ecs {

double log_factorial(int n) {
  if (n < 0) throw DomainError("log_factorial: negative argument " + std::to_string(n));
  static const std::vector<double> table = [] {
    std::vector<double> t(1024);
    t[0] = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] + std::log(static_cast<double>(i));
    return t;
  }();
  if (static_cast<std::size_t>(n) < table.size()) return table[static_cast<std::size_t>(n)];
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return n <= 60 ? std::round(r) : r;
}

namespace {

double l1_norm(const Eigen::MatrixXcd& m) {
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace

Eigen::MatrixXcd expm_series(const Eigen::MatrixXcd& generator, int max_terms) {
  const Eigen::Index n = generator.rows();
  if (n != generator.cols()) throw ValidationError("expm_series: generator must be square");
  if (n == 0) return generator;
  const double norm = l1_norm(generator);
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Eigen::MatrixXcd a = generator / std::ldexp(1.0, squarings);

  Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
  double last = 1.0;
  bool converged = false;
  for (int k = 1; k <= max_terms; ++k) {
    term = (term * a) / static_cast<double>(k);
    result += term;
    last = l1_norm(term);
    if (last < 1e-18) {
      converged = true;
      break;
    }
  }
  if (!converged) throw NumericError("expm_series: Taylor series did not converge", last);
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

Eigen::VectorXcd expm_apply(const Eigen::MatrixXcd& generator, const Eigen::VectorXcd& v,
                            int max_terms) {
  const double norm = generator.rows() == 0 ? 0.0 : l1_norm(generator);
  const int slices = std::max(1, static_cast<int>(std::ceil(norm)));
  const Eigen::MatrixXcd a = generator / static_cast<double>(slices);
  Eigen::VectorXcd x = v;
  for (int s = 0; s < slices; ++s) {
    Eigen::VectorXcd term = x;
    Eigen::VectorXcd sum = x;
    double last = term.norm();
    bool converged = last == 0.0;
    for (int k = 1; k <= max_terms && !converged; ++k) {
      term = (a * term) / static_cast<double>(k);
      sum += term;
      last = term.norm();
      if (last <= 1e-18 * std::max(1.0, sum.norm())) converged = true;
    }
    if (!converged) throw NumericError("expm_apply: Taylor series did not converge", last);
    x = sum;
  }
  return x;
}

double unitarity_defect(const Eigen::MatrixXcd& u) {
  const Eigen::MatrixXcd d = u.adjoint() * u - Eigen::MatrixXcd::Identity(u.cols(), u.cols());
  return d.size() == 0 ? 0.0 : d.cwiseAbs().maxCoeff();
}

LeastSquares least_squares(const Eigen::MatrixXd& design, const Eigen::VectorXd& y) {
  if (design.rows() != y.size()) throw ValidationError("least_squares: row count mismatch");
  if (design.rows() < design.cols()) throw ValidationError("least_squares: underdetermined system");
  LeastSquares out;
  out.coefficients = design.colPivHouseholderQr().solve(y);
  const Eigen::VectorXd resid = y - design * out.coefficients;
  out.residual_sum_squares = resid.squaredNorm();
  const double mean = y.mean();
  const double total = (y.array() - mean).square().sum();
  out.r_squared = total > 0.0 ? 1.0 - out.residual_sum_squares / total : 1.0;
  return out;
}

double wrap_phase(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double wrap_signed(double angle) {
  double r = wrap_phase(angle);
  if (r > kPi) r -= kTwoPi;
  return r;
}

}  // namespace ecs
