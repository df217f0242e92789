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

// Acceptance suite. One PASS/FAIL line per criterion; `--criterion N` runs one.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ecs/conditional.hpp"
#include "ecs/coupling.hpp"
#include "ecs/ecs_state.hpp"
#include "ecs/fock.hpp"
#include "ecs/sources.hpp"
#include "ecs/squeezing.hpp"
#include "ecs/trajectory.hpp"

namespace {

using namespace ecs;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// 1 -------------------------------------------------------------------------

Outcome peak_locations_check() {
  const int m = 1024;
  const double spacing = kPi / m;  // spacing of the half difference
  const std::pair<int, int> cases[] = {{1, 1}, {4, 1}, {16, 4}, {64, 64}, {1, 4}};
  double worst = 0;
  for (const auto& [a, b] : cases) {
    const ConditionalWeight w = conditional_weight(a, b, 0.1, 100, m);
    const auto [neg, pos] = find_peaks(w, false);
    const double target = std::atan(std::sqrt(double(b) / a));
    worst = std::max({worst, std::abs(pos - target), std::abs(neg + target)});
  }
  return {worst <= spacing, fmt("worst |argmax - arctan sqrt(B/A)| = %.3e, grid spacing %.3e", worst, spacing)};
}

// 2 -------------------------------------------------------------------------

Outcome width_scaling_check() {
  const int m = 1024;
  bool ok = true;
  std::string detail;
  for (int n_tot : {32, 128, 512}) {
    const WidthFit f = width_fit(conditional_weight(n_tot / 2, n_tot / 2, 0.05, 4 * n_tot, m));
    const double scaled = f.sigma_relative_phase * std::sqrt(double(n_tot));
    ok = ok && !f.warning && scaled >= std::sqrt(2.0) * 0.9 && scaled <= std::sqrt(2.0) * 1.1;
    detail += fmt("N=%d sigma*sqrtN=%.4f; ", n_tot, scaled);
  }
  // The (4,4) curve: N = 8 sits below the asymptotic guard, so fit the profile directly.
  const WidthFit small = width_fit(delta_profile(conditional_weight(4, 4, 0.05, 100, m).weight), kPi / 4);
  const WidthFit large = width_fit(conditional_weight(64, 64, 0.05, 100, m));
  const double ratio = small.sigma_relative_phase / large.sigma_relative_phase;
  ok = ok && std::abs(ratio - 4.0) <= 0.15 * 4.0;
  detail += fmt("sigma(4,4)/sigma(64,64)=%.4f (target 4 +/- 15%%)", ratio);
  return {ok, detail};
}

// 3 -------------------------------------------------------------------------

Outcome commuting_diagram_check() {
  double worst = 0;
  int cases = 0;
  for (int n = 0; n <= 8; ++n) {
    for (int np : {0, n}) {
      if (n == 0 && np == 0 && cases > 0) continue;
      const int cut = n + np;
      const ModeShape shape({cut, cut});
      const ECSState in = two_mode_circle(n, np, cut);
      const FockVector fock_in = ecs_to_fock(in, shape);
      for (double theta : {kPi / 8, kPi / 4, kPi / 3}) {
        for (double phi : {0.0, kPi / 2}) {
          const FockVector lhs = ecs_to_fock(ecs_apply_coupler(in, {0, 1}, {theta, phi}), shape);
          const FockVector rhs = apply_coupler(fock_in, {0, 1}, {theta, phi});
          worst = std::max(worst, 1.0 - fidelity(lhs, rhs));
          ++cases;
        }
      }
    }
  }
  return {worst <= 1e-10, fmt("%d cases, worst 1 - fidelity = %.3e", cases, worst)};
}

// 4 -------------------------------------------------------------------------

Outcome oracle_agreement_check() {
  double worst = 0;
  const CouplerParams params[] = {{kPi / 8, 0.0}, {kPi / 4, 0.0}, {kPi / 3, kPi / 2}, {1.2, 4.0}};
  for (const auto& p : params) {
    for (int n = 0; n <= 60; ++n) worst = std::max(worst, max_abs(coupler_block(p, n).matrix - oracle_block(p, n).matrix));
  }
  const ModeShape s({2, 2});
  const FockVector out = apply_coupler(basis_state(s, std::vector<int>{1, 1}), {0, 1}, {kPi / 4, 0.0});
  const double hom = std::abs(out.amplitude(std::vector<int>{1, 1}));
  return {worst <= 1e-10 && hom <= 1e-12,
          fmt("max |coupler_block - oracle_block| = %.3e over N <= 60; HOM amplitude %.3e", worst, hom)};
}

// 5 -------------------------------------------------------------------------

Outcome decomposition_check() {
  bool ok = true;
  std::string detail;
  for (double nbar : {1.0, 2.0}) {
    for (int modes : {2, 3}) {
      const int cut = nbar < 1.5 ? 12 : 14;
      const EquivalenceReport r = decomposition_equivalence_check(nbar, modes, cut);
      ok = ok && r.trace_distance <= 1e-8 + r.truncation_tail;
      detail += fmt("nbar=%g N=%d: D=%.3e tail=%.3e; ", nbar, modes, r.trace_distance, r.truncation_tail);
    }
  }
  return {ok, detail};
}

// 6 -------------------------------------------------------------------------

struct PeakCheck {
  bool symmetric = false;
  bool two_peaked = false;
  bool within = false;
  double scaled_sigma = 0;
};

PeakCheck inspect_weight(const TrajectoryState& s) {
  PeakCheck out;
  const DeltaProfile p = delta_profile(s.weight);
  const std::size_t n = p.delta.size();
  const double peak = *std::max_element(p.magnitude.begin(), p.magnitude.end());
  double asym = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(wrap_signed(2 * (p.delta[i] + p.delta[j]))) < 1e-9) asym = std::max(asym, std::abs(p.magnitude[i] - p.magnitude[j]));
  out.symmetric = asym <= 1e-10 * peak;

  // Local maxima on the circle of half differences (period pi).
  std::vector<double> maxima;
  for (std::size_t k = 0; k < n; ++k) {
    const double v = p.magnitude[k];
    if (v >= p.magnitude[(k + 1) % n] && v > p.magnitude[(k + n - 1) % n] && v > 1e-6 * peak) maxima.push_back(p.delta[k]);
  }
  const int a = s.total_a;
  const int b = s.total_b;
  const auto [neg, pos] = grid_peaks(p);
  const bool merged = std::abs(wrap_signed(2 * (pos - neg))) < 1e-9;  // A = 0 or B = 0: the two roots coincide
  out.two_peaked = maxima.size() == (merged ? 1u : 2u);

  const WidthFit f = width_fit(p, pos);
  const double target = a + b > 0 ? peak_locations(a, b).second : 0.0;
  const double dist = std::abs(wrap_signed(2 * (pos - target))) / 2;
  // The residual warning is advisory here; only the fitted width enters the check.
  out.within = f.sigma_delta > 0 && dist <= 2 * f.sigma_delta;
  out.scaled_sigma = f.sigma_relative_phase * std::sqrt(double(a + b));
  return out;
}

Outcome trajectory_check() {
  const int runs = 100;
  int symmetric = 0, two_peaked = 0, within = 0, reached_100 = 0;
  double sigma_sum = 0;
  double worst_overflow = 0;
  for (int seed = 1; seed <= runs; ++seed) {
    const TrajectoryResult r = run_interference_trajectory(20, 0.05, 200, static_cast<std::uint64_t>(seed));
    const PeakCheck c = inspect_weight(r.state);
    symmetric += c.symmetric;
    two_peaked += c.two_peaked;
    within += c.within;
    sigma_sum += c.scaled_sigma;
    reached_100 += r.state.total_a + r.state.total_b >= 100;
    worst_overflow = std::max(worst_overflow, r.max_overflow);
  }

  // n = 20 per cavity never reaches 100 detections, so the fringe clause is
  // exercised on n = 64 cavities run until N >= 100.
  const int fringe_runs = 20;
  int high_visibility = 0;
  double v_sum = 0, imbalance_gap = 0, branch_v_min = 1;
  for (int seed = 1; seed <= fringe_runs; ++seed) {
    TrajectoryState s = initial_trajectory_state(64);
    std::mt19937_64 rng(static_cast<std::uint64_t>(1000 + seed));
    while (s.total_a + s.total_b < 100 && s.remaining > 0) {
      const OutcomeTable t = outcome_probabilities(s, 0.05);
      double u = uniform01(rng), acc = 0;
      std::size_t pick = t.outcomes.size() - 1;
      for (std::size_t k = 0; k < t.outcomes.size(); ++k) {
        acc += t.probabilities[k];
        if (u < acc) {
          pick = k;
          break;
        }
      }
      s = condition(s, 0.05, t.outcomes[pick].first, t.outcomes[pick].second);
    }
    const double v = fringe_scan(s, gamma_grid(128)).visibility;
    v_sum += v;
    high_visibility += v >= 0.9;
    const double n_det = s.total_a + s.total_b;
    imbalance_gap = std::max(imbalance_gap, std::abs(v - std::abs(s.total_a - s.total_b) / n_det));
    // Keeping only the Delta > 0 peak isolates one phase-locked branch.
    TrajectoryState branch = s;
    const int m = s.weight.grid_size;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (half_difference(((i - j) % m + m) % m, m) <= 0) branch.weight.table(i, j) = 0;
    branch_v_min = std::min(branch_v_min, fringe_scan(branch, gamma_grid(128)).visibility);
  }
  const double control = fringe_scan(initial_trajectory_state(20), gamma_grid(128)).visibility;

  const bool ok = symmetric == runs && two_peaked == runs && within >= 95 && high_visibility == fringe_runs && control <= 0.01;
  return {ok, fmt("symmetric %d/%d, two-peaked %d/%d, peak within 2 sigma %d/%d, mean sigma*sqrtN %.3f, "
                  "max overflow %.1e, runs with N>=100 at n=20: %d; n=64 until N>=100: V>=0.9 in %d/%d "
                  "(mean V %.3f, max |V - |A-B|/N| %.3f, single-branch V min %.3f); uniform control V %.2e",
                  symmetric, runs, two_peaked, runs, within, runs, sigma_sum / runs, worst_overflow, reached_100,
                  high_visibility, fringe_runs, v_sum / fringe_runs, imbalance_gap, branch_v_min, control)};
}

// 7 -------------------------------------------------------------------------

struct BruteForce {
  double worst_infidelity = 0;
  double worst_probability_gap = 0;
  long branches = 0;
};

void walk(const TrajectoryState& phase, const FockVector& exact, double eps, int depth, BruteForce& acc) {
  if (depth == 0 || phase.remaining == 0) return;
  const OutcomeTable t = outcome_probabilities(phase, eps);
  const FockVector mixed = exact_leak_and_mix(exact, eps);
  const std::vector<int> detectors{2, 3};
  for (std::size_t k = 0; k < t.outcomes.size(); ++k) {
    const auto [a, b] = t.outcomes[k];
    const int cap = mixed.shape().cutoff(2);
    const ProjectionResult ex = a > cap || b > cap ? ProjectionResult{FockVector(ModeShape({1})), 0.0, true}
                                                   : project_counts(mixed, detectors, {a, b});
    acc.worst_probability_gap = std::max(acc.worst_probability_gap, std::abs(ex.probability - t.probabilities[k]));
    // A forbidden outcome on one route must be forbidden on the other; the probability gap records that.
    if (ex.zero_probability || t.probabilities[k] < 1e-300) continue;
    const TrajectoryState next = condition(phase, eps, a, b);
    const FockVector reduced = cavity_fock_state(next);
    acc.worst_infidelity = std::max(acc.worst_infidelity, 1.0 - fidelity(reduced, ex.state.reshaped(reduced.shape())));
    ++acc.branches;
    walk(next, ex.state, eps, depth - 1, acc);
  }
}

Outcome brute_force_check() {
  BruteForce acc;
  for (double eps : {0.05, 0.3}) {
    for (int n = 1; n <= 4; ++n) {
      walk(initial_trajectory_state(n), basis_state(ModeShape({n, n}), std::vector<int>{n, n}), eps, 3, acc);
    }
  }
  return {acc.worst_infidelity <= 1e-8,
          fmt("%ld branches, worst 1 - fidelity %.3e, worst |p_phase - p_exact| %.3e", acc.branches, acc.worst_infidelity,
              acc.worst_probability_gap)};
}

// 8 -------------------------------------------------------------------------

Outcome pnssr_check() {
  double idem = 0, inv = 0, laser = 0, reduced = 0;
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  for (const std::vector<int>& cut : {std::vector<int>{4}, std::vector<int>{2, 3}, std::vector<int>{1, 2, 1}}) {
    const ModeShape s(cut);
    const auto d = static_cast<Eigen::Index>(s.size());
    Eigen::MatrixXcd x(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) x(i, j) = cplx(g(rng), g(rng));
    Eigen::MatrixXcd rho = x * x.adjoint();
    rho /= rho.trace().real();
    const DensityMatrix r(s, rho);
    const DensityMatrix t = twirl(r);
    idem = std::max(idem, max_abs(twirl(t).entries() - t.entries()));
    for (double delta : {0.4, 2.2, -1.3}) {
      Eigen::VectorXcd ph(d);
      for (std::size_t i = 0; i < s.size(); ++i) {
        int total = 0;
        for (int m = 0; m < s.mode_count(); ++m) total += s.occupation(i, m);
        ph[static_cast<Eigen::Index>(i)] = std::polar(1.0, delta * total);
      }
      const DensityMatrix shifted(s, ph.asDiagonal() * rho * ph.conjugate().asDiagonal());
      inv = std::max(inv, max_abs(twirl(shifted).entries() - t.entries()));
    }
  }
  for (double nbar : {0.5, 4.0, 16.0}) {
    const int cut = default_cutoff(nbar);
    const DensityMatrix tw = twirl(to_density(coherent_amplitudes(std::polar(std::sqrt(nbar), 0.7), cut)));
    laser = std::max(laser, max_abs(tw.entries() - laser_density({nbar, cut}).to_density().entries()));
  }
  for (int n : {4, 8}) {
    const cplx zt = 0.2 / std::sqrt(double(n));
    for (const FockVector& st : {synthesize_pump_entangled(n, zt, n).state, exact_three_mode_evolution(n, zt, n)}) {
      const DensityMatrix rab = reduced_ab_density(st);
      reduced = std::max(reduced, max_abs(twirl(rab).entries() - rab.entries()));
    }
  }
  const bool ok = idem <= 1e-12 && inv <= 1e-12 && laser <= 1e-12 && reduced <= 1e-12;
  return {ok, fmt("idempotence %.2e, invariance %.2e, laser vs twirl %.2e, reduced ab %.2e", idem, inv, laser, reduced)};
}

// 9 -------------------------------------------------------------------------

Outcome squeezing_check() {
  std::vector<double> fid;
  std::string detail = "fidelity";
  for (int n : {2, 4, 8, 12}) {
    const cplx zt = 0.2 / std::sqrt(double(n));
    fid.push_back(fidelity(synthesize_pump_entangled(n, zt, n).state, exact_three_mode_evolution(n, zt, n)));
    detail += fmt(" n=%d:%.10f", n, fid.back());
  }
  bool monotone = true;
  for (std::size_t k = 1; k < fid.size(); ++k) monotone = monotone && fid[k] >= fid[k - 1];

  // Every consecutive ratio of the reduced pair weights against tanh^2 |chi|.
  const int n = 12;
  const double ladder = std::pow(std::tanh(0.2), 2);
  const auto w = pair_weights(reduced_ab_density(synthesize_pump_entangled(n, 0.2 / std::sqrt(double(n)), n).state));
  double worst = 0;
  int first_bad = -1;
  for (int k = 0; k + 1 < static_cast<int>(w.size()); ++k) {
    if (w[k + 1] <= 0) break;
    const double dev = std::abs(w[k + 1] / w[k] - ladder);
    if (dev > 1e-2 && first_bad < 0) first_bad = k;
    worst = std::max(worst, dev);
  }
  detail += fmt("; ratio w_{k+1}/w_k vs tanh^2(0.2)=%.5f: worst |dev| %.4f", ladder, worst);
  if (first_bad >= 0) detail += fmt(" (exceeds 1e-2 from k=%d)", first_bad);
  return {monotone && worst <= 1e-2, detail};
}

// 10 ------------------------------------------------------------------------

Outcome phase_walk_check() {
  const CoherenceEstimate g = phase_walk_correlation({0.1, 11, 1, 20260101}, 2000);
  const double mag = std::abs(g.g1(0, 10));
  const double se = g.standard_error(0, 10);
  const double target = std::exp(-0.5);
  return {std::abs(mag - target) <= 3 * se, fmt("|g1(lag 10)| = %.4f, e^-0.5 = %.4f, standard error %.4f", mag, target, se)};
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "peak-locations", 1, peak_locations_check},
      {2, "width-scaling", 5, width_scaling_check},
      {3, "commuting-diagram", 10, commuting_diagram_check},
      {4, "oracle-agreement", 5, oracle_agreement_check},
      {5, "decomposition-equivalence", 30, decomposition_check},
      {6, "trajectory-phase-locking", 300, trajectory_check},
      {7, "trajectory-brute-force", 120, brute_force_check},
      {8, "pnssr-compliance", 5, pnssr_check},
      {9, "squeezing-approximation", 60, squeezing_check},
      {10, "phase-walk-coherence", 120, phase_walk_check},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ecs acceptance suite"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-10)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  int failures = 0;
  for (const auto& c : criteria()) {
    if (only && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_budget = secs < c.budget_seconds;
    const bool pass = o.pass && in_budget;
    failures += !pass;
    std::printf("%s [%d] %s (%.2f s, budget %.0f s%s): %s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs,
                c.budget_seconds, in_budget ? "" : ", over budget", o.detail.c_str());
    std::fflush(stdout);
  }
  return failures ? 1 : 0;
}
