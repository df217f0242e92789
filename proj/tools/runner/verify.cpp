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

#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "ecs/coupling.hpp"
#include "ecs/ecs_state.hpp"
#include "ecs/errors.hpp"
#include "ecs/fock.hpp"
#include "ecs/sources.hpp"
#include "ecs/trajectory.hpp"

namespace ecs::cli {

namespace {

CheckRow commuting_diagram(int max_n) {
  double worst = 0;
  for (int n = 0; n <= max_n; ++n) {
    for (int np : {0, n / 2, n}) {
      const int cut = std::max(1, n + np);
      const ModeShape shape({cut, cut});
      const ECSState in = two_mode_circle(n, np, cut);
      const FockVector fock_in = ecs_to_fock(in, shape);
      for (double theta : {kPi / 8, kPi / 4, kPi / 3}) {
        for (double phi : {0.0, kPi / 2}) {
          const FockVector lhs = ecs_to_fock(ecs_apply_coupler(in, {0, 1}, {theta, phi}), shape);
          worst = std::max(worst, 1.0 - fidelity(lhs, apply_coupler(fock_in, {0, 1}, {theta, phi})));
        }
      }
    }
  }
  return {"commuting diagram n <= " + std::to_string(max_n) + " (1 - fidelity)", worst, 1e-10, worst <= 1e-10};
}

CheckRow oracle_agreement(int max_n) {
  double worst = 0;
  for (const CouplerParams p : {CouplerParams{kPi / 8, 0.0}, CouplerParams{kPi / 3, kPi / 2}, CouplerParams{1.2, 4.0}}) {
    for (int n = 0; n <= max_n; ++n) {
      worst = std::max(worst, (coupler_block(p, n).matrix - oracle_block(p, n).matrix).cwiseAbs().maxCoeff());
    }
  }
  return {"coupler block vs oracle N <= " + std::to_string(max_n), worst, 1e-10, worst <= 1e-10};
}

CheckRow hong_ou_mandel() {
  const FockVector out = apply_coupler(basis_state(ModeShape({2, 2}), std::vector<int>{1, 1}), {0, 1}, {kPi / 4, 0.0});
  const double a = std::abs(out.amplitude(std::vector<int>{1, 1}));
  return {"HOM amplitude on |1,1)", a, 1e-12, a <= 1e-12};
}

std::vector<CheckRow> decomposition(bool full) {
  std::vector<CheckRow> rows;
  for (double nbar : {1.0, 2.0}) {
    for (int modes : {2, 3}) {
      if (!full && (nbar > 1.0 || modes > 2)) continue;
      const EquivalenceReport r = decomposition_equivalence_check(nbar, modes, nbar > 1.0 ? 14 : 12);
      char name[96];
      std::snprintf(name, sizeof name, "decomposition nbar=%g modes=%d (trace distance)", nbar, modes);
      rows.push_back({name, r.trace_distance, 1e-8 + r.truncation_tail, r.trace_distance <= 1e-8 + r.truncation_tail});
    }
  }
  return rows;
}

CheckRow twirl_idempotence() {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  const ModeShape s({2, 3});
  const auto d = static_cast<Eigen::Index>(s.size());
  Eigen::MatrixXcd x(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) x(i, j) = cplx(g(rng), g(rng));
  Eigen::MatrixXcd rho = x * x.adjoint();
  rho /= rho.trace().real();
  const DensityMatrix t = twirl(DensityMatrix(s, rho));
  const double defect = (twirl(t).entries() - t.entries()).cwiseAbs().maxCoeff();
  return {"twirl idempotence", defect, 1e-12, defect <= 1e-12};
}

void brute_force(const TrajectoryState& phase, const FockVector& exact, double eps, int depth, double& worst) {
  if (depth == 0 || phase.remaining == 0) return;
  const OutcomeTable t = outcome_probabilities(phase, eps);
  for (std::size_t k = 0; k < t.outcomes.size(); ++k) {
    const auto [a, b] = t.outcomes[k];
    const ProjectionResult ex = exact_detection_step(exact, eps, a, b);
    worst = std::max(worst, std::abs(ex.probability - t.probabilities[k]));
    if (ex.zero_probability || t.probabilities[k] < 1e-300) continue;
    const TrajectoryState next = condition(phase, eps, a, b);
    const FockVector reduced = cavity_fock_state(next);
    worst = std::max(worst, 1.0 - fidelity(reduced, ex.state.reshaped(reduced.shape())));
    brute_force(next, ex.state, eps, depth - 1, worst);
  }
}

CheckRow trajectory_brute_force(int max_n, int depth) {
  double worst = 0;
  for (int n = 1; n <= max_n; ++n) {
    brute_force(initial_trajectory_state(n), basis_state(ModeShape({n, n}), std::vector<int>{n, n}), 0.3, depth, worst);
  }
  char name[96];
  std::snprintf(name, sizeof name, "trajectory vs exact n <= %d, %d steps", max_n, depth);
  return {name, worst, 1e-8, worst <= 1e-8};
}

}  // namespace

std::vector<CheckRow> run_suite(const std::string& suite) {
  if (suite != "fast" && suite != "full") throw ValidationError("verify: suite must be fast or full");
  const bool full = suite == "full";
  std::vector<CheckRow> rows;
  rows.push_back(commuting_diagram(full ? 8 : 4));
  rows.push_back(oracle_agreement(full ? 60 : 20));
  rows.push_back(hong_ou_mandel());
  for (auto& r : decomposition(full)) rows.push_back(std::move(r));
  rows.push_back(twirl_idempotence());
  rows.push_back(trajectory_brute_force(full ? 4 : 2, full ? 3 : 2));
  return rows;
}

void print_table(std::ostream& os, const std::vector<CheckRow>& rows) {
  std::size_t width = 5;
  for (const auto& r : rows) width = std::max(width, r.name.size());
  char line[256];
  std::snprintf(line, sizeof line, "%-*s  %12s  %12s  %s\n", static_cast<int>(width), "check", "measured", "tolerance", "result");
  os << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-*s  %12.3e  %12.3e  %s\n", static_cast<int>(width), r.name.c_str(), r.measured,
                  r.tolerance, r.pass ? "PASS" : "FAIL");
    os << line;
  }
}

}  // namespace ecs::cli
