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

#include "ecs/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "ecs/coupling.hpp"
#include "ecs/errors.hpp"

namespace ecs {

namespace {

constexpr int kMaxTrajectoryPhotons = 500;
constexpr int kMaxTrajectorySteps = 1000000;

// F(p) = mean over the grid of W e^{i p phi + i (R - p) phi'}, p = 0..R.
std::vector<cplx> diagonal_fourier(const PhasePairWeight& w, int remaining) {
  const int m = w.grid_size;
  std::vector<cplx> ph(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) ph[static_cast<std::size_t>(k)] = std::polar(1.0, kTwoPi * k / m);
  // rows[p][j] = sum_i e^{i p phi_i} W(i, j)
  std::vector<cplx> out(static_cast<std::size_t>(remaining) + 1);
  Eigen::VectorXcd row(m);
  for (int p = 0; p <= remaining; ++p) {
    row.setZero();
    for (int i = 0; i < m; ++i) {
      const cplx e = ph[static_cast<std::size_t>((static_cast<long>(p) * i) % m)];
      row += e * w.table.row(i).transpose();
    }
    cplx s = 0.0;
    const int q = remaining - p;
    for (int j = 0; j < m; ++j) s += row[j] * ph[static_cast<std::size_t>((static_cast<long>(q) * j) % m)];
    out[static_cast<std::size_t>(p)] = s / (static_cast<double>(m) * m);
  }
  return out;
}

// sum_p |F(p)|^2 / (p! (R - p)!)
double weighted_norm(const std::vector<cplx>& f) {
  const int r = static_cast<int>(f.size()) - 1;
  double s = 0.0;
  for (int p = 0; p <= r; ++p) s += std::norm(f[static_cast<std::size_t>(p)]) * std::exp(-log_factorial(p) - log_factorial(r - p));
  return s;
}

// Coefficients of u^i v^{A+B-i} in (u + v)^A (v - u)^B.
std::vector<double> expansion(int A, int B) {
  std::vector<double> k(static_cast<std::size_t>(A + B) + 1, 0.0);
  for (int a = 0; a <= A; ++a) {
    for (int b = 0; b <= B; ++b) k[static_cast<std::size_t>(a + b)] += binomial(A, a) * binomial(B, b) * ((b % 2) ? -1.0 : 1.0);
  }
  return k;
}

double log_outcome_probability(const TrajectoryState& s, const std::vector<cplx>& f, double log_norm, double eps,
                               int A, int B) {
  const int r = s.remaining;
  const int r_next = r - A - B;
  if (r_next < 0) return -std::numeric_limits<double>::infinity();
  const auto kappa = expansion(A, B);
  std::vector<cplx> g(static_cast<std::size_t>(r_next) + 1);
  for (int p = 0; p <= r_next; ++p) {
    cplx acc = 0.0;
    for (int i = 0; i <= A + B; ++i) acc += kappa[static_cast<std::size_t>(i)] * f[static_cast<std::size_t>(p + i)];
    g[static_cast<std::size_t>(p)] = acc;
  }
  const double s_next = weighted_norm(g);
  if (s_next <= 0.0) return -std::numeric_limits<double>::infinity();
  const double r2 = s.radius_squared;
  const double r2_next = r2 * (1.0 - eps);
  const double x = eps * r2 / 2.0;
  const double log_pref2 = -2.0 * eps * r2 + (A + B) * std::log(x) - log_factorial(A) - log_factorial(B);
  return log_pref2 + std::log(s_next) - log_norm + (-2.0 * r2_next + r_next * std::log(r2_next)) -
         (-2.0 * r2 + r * std::log(r2));
}

void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("trajectory: eps must lie in (0, 1)");
}

}  // namespace

TrajectoryState initial_trajectory_state(int n, int grid_size) {
  if (n < 0) throw DomainError("initial_trajectory_state: negative photon number");
  if (n > kMaxTrajectoryPhotons) throw SizingError("trajectory: n above " + std::to_string(kMaxTrajectoryPhotons));
  TrajectoryState s;
  s.n = n;
  const int m = grid_size > 0 ? grid_size : default_grid_size(n);
  if (m < 2 * n + 1) throw ValidationError("trajectory: grid size must be at least 2n + 1 = " + std::to_string(2 * n + 1));
  s.weight.grid_size = m;
  s.weight.table.resize(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) s.weight.table(i, j) = std::polar(1.0, -n * kTwoPi * ((i + j) % m) / m);
  }
  s.radius_squared = n;
  s.remaining = 2 * n;
  return s;
}

TrajectoryState locked_trajectory_state(int n, double delta, int grid_size) {
  TrajectoryState s = initial_trajectory_state(n, grid_size);
  const int m = s.weight.grid_size;
  int best = 0;
  for (int d = 1; d < m; ++d) {
    if (std::abs(half_difference(d, m) - delta) < std::abs(half_difference(best, m) - delta)) best = d;
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if ((i - j - best) % m != 0) s.weight.table(i, j) = 0.0;
    }
  }
  return s;
}

double outcome_probability(const TrajectoryState& state, double eps, int A, int B) {
  check_eps(eps);
  if (A < 0 || B < 0) throw DomainError("outcome_probability: negative count");
  if (state.remaining == 0) return A == 0 && B == 0 ? 1.0 : 0.0;
  const auto f = diagonal_fourier(state.weight, state.remaining);
  const double norm = weighted_norm(f);
  return std::exp(log_outcome_probability(state, f, std::log(norm), eps, A, B));
}

OutcomeTable outcome_probabilities(const TrajectoryState& state, double eps, double overflow_tolerance) {
  check_eps(eps);
  OutcomeTable out;
  if (state.remaining == 0) {
    out.outcomes = {{0, 0}};
    out.probabilities = {1.0};
    return out;
  }
  const auto f = diagonal_fourier(state.weight, state.remaining);
  const double log_norm = std::log(weighted_norm(f));
  int cap = std::min(4, state.remaining);
  int done = -1;
  double total = 0.0;
  // Grow the cap ring by ring; outcomes already evaluated are kept.
  while (true) {
    for (int a = 0; a <= cap; ++a) {
      for (int b = 0; b <= cap; ++b) {
        if (a <= done && b <= done) continue;
        if (a + b > state.remaining) continue;
        const double p = std::exp(log_outcome_probability(state, f, log_norm, eps, a, b));
        out.outcomes.emplace_back(a, b);
        out.probabilities.push_back(p);
        total += p;
      }
    }
    done = cap;
    out.cap = cap;
    out.overflow = std::max(0.0, 1.0 - total);
    if (out.overflow < overflow_tolerance || cap >= state.remaining) break;
    cap = std::min(state.remaining, cap + 2);
  }
  return out;
}

TrajectoryState condition(const TrajectoryState& state, double eps, int A, int B) {
  check_eps(eps);
  if (A < 0 || B < 0 || A + B > state.remaining) throw DomainError("condition: counts exceed the photons left");
  TrajectoryState next = state;
  const int m = state.weight.grid_size;
  for (int i = 0; i < m; ++i) {
    const cplx x = std::polar(1.0, kTwoPi * i / m);
    for (int j = 0; j < m; ++j) {
      const cplx y = std::polar(1.0, kTwoPi * j / m);
      cplx c = 1.0;
      if (A) c *= std::pow(x + y, A);
      if (B) c *= std::pow(y - x, B);
      next.weight.table(i, j) *= c;
    }
  }
  const double mx = next.weight.table.cwiseAbs().maxCoeff();
  if (mx == 0.0) throw NumericError("condition: outcome has zero weight", 0.0);
  next.weight.table /= mx;
  next.radius_squared = state.radius_squared * (1.0 - eps);
  next.remaining = state.remaining - A - B;
  next.steps_taken = state.steps_taken + 1;
  next.total_a = state.total_a + A;
  next.total_b = state.total_b + B;
  return next;
}

TrajectoryResult run_interference_trajectory(int n, double eps, int steps, std::uint64_t seed, int grid_size) {
  check_eps(eps);
  if (steps < 0) throw DomainError("run_interference_trajectory: negative step count");
  if (steps > kMaxTrajectorySteps) throw SizingError("run_interference_trajectory: too many steps");
  TrajectoryResult res;
  res.state = initial_trajectory_state(n, grid_size);
  res.record.seed = seed;
  res.record.cumulative = {0, 0};
  std::mt19937_64 rng(seed);
  for (int s = 0; s < steps && res.state.remaining > 0; ++s) {
    const OutcomeTable table = outcome_probabilities(res.state, eps);
    res.max_overflow = std::max(res.max_overflow, table.overflow);
    res.max_cap = std::max(res.max_cap, table.cap);
    double total = 0.0;
    for (double p : table.probabilities) total += p;
    const double u = uniform01(rng) * total;
    std::size_t pick = table.probabilities.size() - 1;
    double acc = 0.0;
    for (std::size_t k = 0; k < table.probabilities.size(); ++k) {
      acc += table.probabilities[k];
      if (u < acc) {
        pick = k;
        break;
      }
    }
    const auto [a, b] = table.outcomes[pick];
    res.record.append({s, {a, b}, table.probabilities[pick]});
    res.state = condition(res.state, eps, a, b);
  }
  return res;
}

FockVector cavity_fock_state(const TrajectoryState& state) {
  const int r = state.remaining;
  const ModeShape shape({r, r});
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(shape.size()));
  if (r == 0) {
    amps[0] = 1.0;
    return FockVector(shape, amps);
  }
  const auto f = diagonal_fourier(state.weight, r);
  for (int p = 0; p <= r; ++p) {
    const double mag = std::exp(-0.5 * (log_factorial(p) + log_factorial(r - p)));
    amps[static_cast<Eigen::Index>(shape.index(std::vector<int>{p, r - p}))] = mag * f[static_cast<std::size_t>(p)];
  }
  const double norm = amps.norm();
  if (norm == 0.0) throw NumericError("cavity_fock_state: weight has no content on the remaining sector", 0.0);
  return FockVector(shape, amps / norm);
}

CavityMoments cavity_moments(const TrajectoryState& state) {
  const FockVector psi = cavity_fock_state(state);
  const int r = state.remaining;
  CavityMoments m;
  for (int p = 0; p <= r; ++p) {
    const double w = std::norm(psi.amplitude(std::vector<int>{p, r - p}));
    m.n_a += p * w;
    m.n_b += (r - p) * w;
  }
  for (int p = 0; p < r; ++p) {
    const int q = r - p;
    m.a_dag_b += std::conj(psi.amplitude(std::vector<int>{p + 1, q - 1})) * psi.amplitude(std::vector<int>{p, q}) *
                 std::sqrt(static_cast<double>((p + 1) * q));
  }
  return m;
}

FringeCurve fringe_scan(const TrajectoryState& state, const std::vector<double>& gammas) {
  if (gammas.empty()) throw ValidationError("fringe_scan: empty gamma grid");
  const CavityMoments m = cavity_moments(state);
  FringeCurve out;
  out.gamma = gammas;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double g : gammas) {
    const double v = 0.5 * (m.n_a + m.n_b + 2.0 * std::real(std::polar(1.0, g) * m.a_dag_b));
    out.intensity.push_back(v);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  out.visibility = hi + lo > 0.0 ? (hi - lo) / (hi + lo) : 0.0;
  return out;
}

std::vector<double> gamma_grid(int points) {
  if (points < 1) throw ValidationError("gamma_grid: need at least one point");
  std::vector<double> g;
  for (int k = 0; k < points; ++k) g.push_back(kTwoPi * k / points);
  return g;
}

FockVector exact_leak_and_mix(const FockVector& cavities, double eps) {
  check_eps(eps);
  if (cavities.shape().mode_count() != 2) throw ValidationError("exact_leak_and_mix: two cavity modes required");
  int cap = 0;
  for (std::size_t i = 0; i < cavities.shape().size(); ++i) {
    if (cavities[i] != cplx(0.0)) cap = std::max(cap, cavities.shape().occupation(i, 0) + cavities.shape().occupation(i, 1));
  }
  const ModeShape shape({cap, cap});
  FockVector s = tensor(cavities.reshaped(shape), basis_state(shape, std::vector<int>{0, 0}));
  const CouplerParams leak{std::asin(std::sqrt(eps)), kPi};
  s = apply_coupler(s, {0, 2}, leak);
  s = apply_coupler(s, {1, 3}, leak);
  return apply_coupler(s, {2, 3}, {kPi / 4, 0.0});
}

ProjectionResult exact_detection_step(const FockVector& cavities, double eps, int A, int B) {
  const FockVector s = exact_leak_and_mix(cavities, eps);
  const int cap = s.shape().cutoff(2);
  if (A < 0 || B < 0 || A > cap || B > cap) return {FockVector(s.shape().select(std::vector<int>{0, 1})), 0.0, true};
  return project_counts(s, {2, 3}, {A, B});
}

}  // namespace ecs
