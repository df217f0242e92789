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

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ecs/ecs_state.hpp"

namespace ecs {

/// Complex weight over a (phi, phi') grid; table(i, j) sits at
/// (2 pi i / M, 2 pi j / M).
struct PhasePairWeight {
  int grid_size = 0;
  Eigen::MatrixXcd table;
};

/// Half phase difference (phi - phi')/2 of grid offset d = i - j, in (-pi/2, pi/2].
double half_difference(int offset, int grid_size);

/// |weight| as a function of the half phase difference. Entries are the
/// maximum magnitude over each diagonal i - j = const, sorted by delta.
struct DeltaProfile {
  std::vector<double> delta;
  std::vector<double> magnitude;
};
DeltaProfile delta_profile(const PhasePairWeight& w);

/// Largest relative spread of |weight| along any diagonal i - j = const;
/// zero when |weight| depends on the phases only through their difference.
double delta_dependence_defect(const PhasePairWeight& w);

/// Photodetection factor after A and B counts behind a 50/50 mixer:
///   C = (A| sqrt(eps n/2)(e^{i phi} + e^{i phi'}) > (B| sqrt(eps n/2)(-e^{i phi} + e^{i phi'}) >.
/// `weight.table` holds C / exp(log_scale), so its largest magnitude is 1.
struct ConditionalWeight {
  int A = 0;
  int B = 0;
  double eps = 0.0;
  double n = 0.0;
  PhasePairWeight weight;
  /// log of e^{-eps n} (eps n / 2)^{(A+B)/2} / sqrt(A! B!).
  double log_prefactor = 0.0;
  /// log of the largest |C| on the grid.
  double log_scale = 0.0;
};

ConditionalWeight conditional_weight(int A, int B, double eps, double n, int grid_size);

/// Peak positions +-arctan(sqrt(B/A)); A = 0 gives +-pi/2, B = 0 a double
/// root at 0. A = B = 0 throws DomainError.
std::pair<double, double> peak_locations(int A, int B);

/// Grid argmax on each side of delta = 0, optionally refined by one Newton
/// step on A log|cos| + B log|sin|. Returns (negative peak, positive peak).
std::pair<double, double> grid_peaks(const DeltaProfile& profile);
std::pair<double, double> find_peaks(const ConditionalWeight& w, bool refine = true);

/// Gaussian fit of log|weight| around one peak.
struct WidthFit {
  double center = 0.0;
  /// Standard deviation in the half difference delta.
  double sigma_delta = 0.0;
  /// Standard deviation in the relative phase phi - phi' (twice sigma_delta).
  double sigma_relative_phase = 0.0;
  /// RMS residual of the log-magnitude fit.
  double residual = 0.0;
  int points = 0;
  bool warning = false;
  std::string message;
};

/// Smallest N = A + B accepted by the fit on a conditional weight.
inline constexpr int kWidthFitMinCounts = 16;

/// Fits log|w| = a + b (delta - c)^2 over the points with |w| >= e^{-2} max
/// near the peak at `center`.
WidthFit width_fit(const DeltaProfile& profile, double center);
/// Fit around the positive analytic peak. Throws DomainError when N < 16.
WidthFit width_fit(const ConditionalWeight& w);

/// CSV with header "delta,magnitude" (normalized to a unit peak).
std::string conditional_weight_csv(const ConditionalWeight& w);

}  // namespace ecs
