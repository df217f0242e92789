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

#include "ecs/conditional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <vector>

#include "ecs/errors.hpp"
#include "ecs/serialize.hpp"

namespace ecs {

double half_difference(int offset, int grid_size) {
  return 0.5 * wrap_signed(kTwoPi * offset / grid_size);
}

DeltaProfile delta_profile(const PhasePairWeight& w) {
  const int m = w.grid_size;
  std::vector<std::pair<double, double>> rows;
  rows.reserve(static_cast<std::size_t>(m));
  for (int d = 0; d < m; ++d) {
    double best = 0.0;
    for (int j = 0; j < m; ++j) best = std::max(best, std::abs(w.table((j + d) % m, j)));
    rows.emplace_back(half_difference(d, m), best);
  }
  std::sort(rows.begin(), rows.end());
  DeltaProfile out;
  for (const auto& [d, v] : rows) {
    out.delta.push_back(d);
    out.magnitude.push_back(v);
  }
  return out;
}

double delta_dependence_defect(const PhasePairWeight& w) {
  const int m = w.grid_size;
  double scale = w.table.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (int d = 0; d < m; ++d) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int j = 0; j < m; ++j) {
      const double v = std::abs(w.table((j + d) % m, j));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    worst = std::max(worst, (hi - lo) / scale);
  }
  return worst;
}

ConditionalWeight conditional_weight(int A, int B, double eps, double n, int grid_size) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("conditional_weight: eps must lie in (0, 1)");
  if (A < 0 || B < 0) throw DomainError("conditional_weight: negative count");
  if (n <= 0.0) throw DomainError("conditional_weight: n must be positive");
  ConditionalWeight out;
  out.A = A;
  out.B = B;
  out.eps = eps;
  out.n = n;
  const double en = eps * n;
  out.log_prefactor = -en + 0.5 * (A + B) * std::log(en / 2.0) - 0.5 * (log_factorial(A) + log_factorial(B));

  const PhaseGrid grid(grid_size);
  const int m = grid.size();
  // log|C| and arg C per point, then rescaled by the maximum.
  Eigen::MatrixXd logmag(m, m);
  Eigen::MatrixXd arg(m, m);
  std::vector<cplx> e(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) e[static_cast<std::size_t>(k)] = std::polar(1.0, grid.phase(k));
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) {
    const cplx x = e[static_cast<std::size_t>(i)];
    for (int j = 0; j < m; ++j) {
      const cplx y = e[static_cast<std::size_t>(j)];
      const cplx u = x + y;
      const cplx v = y - x;
      double lm = out.log_prefactor;
      double ph = 0.0;
      if (A > 0) {
        const double nu = std::norm(u);
        lm += nu > 0.0 ? 0.5 * A * std::log(nu) : kNegInf;
        ph += A * std::atan2(u.imag(), u.real());
      }
      if (B > 0) {
        const double nv = std::norm(v);
        lm += nv > 0.0 ? 0.5 * B * std::log(nv) : kNegInf;
        ph += B * std::atan2(v.imag(), v.real());
      }
      logmag(i, j) = lm;
      arg(i, j) = ph;
    }
  }
  out.log_scale = logmag.maxCoeff();
  out.weight.grid_size = m;
  out.weight.table.resize(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) out.weight.table(i, j) = std::polar(std::exp(logmag(i, j) - out.log_scale), arg(i, j));
  }
  return out;
}

std::pair<double, double> peak_locations(int A, int B) {
  if (A < 0 || B < 0) throw DomainError("peak_locations: negative count");
  if (A == 0 && B == 0) throw DomainError("peak_locations: undefined without detections");
  if (A == 0) return {-kPi / 2, kPi / 2};
  const double p = std::atan(std::sqrt(static_cast<double>(B) / A));
  return {-p, p};
}

std::pair<double, double> grid_peaks(const DeltaProfile& profile) {
  double neg = 0.0;
  double pos = 0.0;
  double best_neg = -1.0;
  double best_pos = -1.0;
  for (std::size_t k = 0; k < profile.delta.size(); ++k) {
    const double d = profile.delta[k];
    const double v = profile.magnitude[k];
    if (d <= 0.0 && v > best_neg) {
      best_neg = v;
      neg = d;
    }
    if (d >= 0.0 && v > best_pos) {
      best_pos = v;
      pos = d;
    }
  }
  // The half difference pi/2 is the same point as -pi/2.
  if (best_neg < best_pos && std::abs(pos - kPi / 2) < 1e-12) neg = -kPi / 2;
  return {neg, pos};
}

namespace {

double newton_refine(double d, int A, int B) {
  if (A == 0 || B == 0) return d;
  const double t = std::tan(d);
  const double f1 = -A * t + B / t;
  const double f2 = -A * (1.0 + t * t) - B * (1.0 + 1.0 / (t * t));
  const double next = d - f1 / f2;
  return std::abs(next - d) < 0.5 ? next : d;
}

}  // namespace

std::pair<double, double> find_peaks(const ConditionalWeight& w, bool refine) {
  auto [neg, pos] = grid_peaks(delta_profile(w.weight));
  if (refine) {
    neg = newton_refine(neg, w.A, w.B);
    pos = newton_refine(pos, w.A, w.B);
  }
  return {neg, pos};
}

WidthFit width_fit(const DeltaProfile& profile, double center) {
  WidthFit out;
  out.center = center;
  const double peak = *std::max_element(profile.magnitude.begin(), profile.magnitude.end());
  // Walk outward from the sample nearest the center while above e^{-2}.
  std::size_t c = 0;
  for (std::size_t k = 1; k < profile.delta.size(); ++k) {
    if (std::abs(profile.delta[k] - center) < std::abs(profile.delta[c] - center)) c = k;
  }
  const double floor = peak * std::exp(-2.0);
  std::vector<std::size_t> idx{c};
  const std::size_t n = profile.delta.size();
  for (std::size_t s = 1; s < n / 2; ++s) {
    const std::size_t k = (c + s) % n;
    if (profile.magnitude[k] < floor) break;
    idx.push_back(k);
  }
  for (std::size_t s = 1; s < n / 2; ++s) {
    const std::size_t k = (c + n - s) % n;
    if (profile.magnitude[k] < floor) break;
    idx.push_back(k);
  }
  out.points = static_cast<int>(idx.size());
  if (idx.size() < 3) {
    out.warning = true;
    out.message = "fewer than three grid points inside the peak";
    return out;
  }
  Eigen::MatrixXd x(static_cast<Eigen::Index>(idx.size()), 2);
  Eigen::VectorXd y(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const double d = wrap_signed(2.0 * (profile.delta[idx[r]] - center)) / 2.0;
    x(static_cast<Eigen::Index>(r), 0) = 1.0;
    x(static_cast<Eigen::Index>(r), 1) = d * d;
    y[static_cast<Eigen::Index>(r)] = std::log(profile.magnitude[idx[r]] / peak);
  }
  const LeastSquares fit = least_squares(x, y);
  const double b = fit.coefficients[1];
  out.residual = std::sqrt(fit.residual_sum_squares / static_cast<double>(idx.size()));
  if (!(b < 0.0)) {
    out.warning = true;
    out.message = "log-magnitude is not concave around the peak";
    return out;
  }
  out.sigma_delta = std::sqrt(-1.0 / (2.0 * b));
  out.sigma_relative_phase = 2.0 * out.sigma_delta;
  if (out.residual > 0.05) {
    out.warning = true;
    out.message = "Gaussian fit residual above 0.05";
  }
  return out;
}

WidthFit width_fit(const ConditionalWeight& w) {
  if (w.A + w.B < kWidthFitMinCounts) {
    throw DomainError("width_fit: N = " + std::to_string(w.A + w.B) + " is below the asymptotic regime (N >= " +
                      std::to_string(kWidthFitMinCounts) + ")");
  }
  const auto peaks = find_peaks(w, true);
  return width_fit(delta_profile(w.weight), peaks.second);
}

std::string conditional_weight_csv(const ConditionalWeight& w) {
  const DeltaProfile p = delta_profile(w.weight);
  std::string out = "delta,magnitude\n";
  for (std::size_t k = 0; k < p.delta.size(); ++k) {
    out += format_double(p.delta[k]) + "," + format_double(p.magnitude[k]) + "\n";
  }
  return out;
}

}  // namespace ecs
