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
#include <span>

#include <Eigen/Dense>

namespace ecs {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// log(n!) for n >= 0.
double log_factorial(int n);

/// Binomial coefficient as a double; exact for n <= 60.
double binomial(int n, int k);

/// Matrix exponential by scaling and squaring of a Taylor series.
/// Throws NumericError if the series does not converge in `max_terms`.
Eigen::MatrixXcd expm_series(const Eigen::MatrixXcd& generator, int max_terms = 200);

/// exp(G) v for a generator applied to a single vector, by direct Taylor
/// summation with time slicing. Used where only one column is needed.
Eigen::VectorXcd expm_apply(const Eigen::MatrixXcd& generator, const Eigen::VectorXcd& v,
                            int max_terms = 400);

/// Largest |U^dagger U - 1| entry.
double unitarity_defect(const Eigen::MatrixXcd& u);

/// Ordinary least squares for y ~ X b; returns b and the residual sum of squares.
struct LeastSquares {
  Eigen::VectorXd coefficients;
  double residual_sum_squares = 0.0;
  double r_squared = 0.0;
};
LeastSquares least_squares(const Eigen::MatrixXd& design, const Eigen::VectorXd& y);

/// Wraps an angle into [0, 2 pi).
double wrap_phase(double angle);

/// Wraps an angle into (-pi, pi].
double wrap_signed(double angle);

}  // namespace ecs
