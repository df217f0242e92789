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

#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "ecs/conditional.hpp"
#include "ecs/coupling.hpp"
#include "ecs/ecs_state.hpp"
#include "ecs/errors.hpp"
#include "ecs/homodyne.hpp"
#include "ecs/serialize.hpp"
#include "ecs/sources.hpp"
#include "ecs/squeezing.hpp"
#include "ecs/trajectory.hpp"

namespace ecs::cli {

namespace {

using nlohmann::json;

ExperimentOutput interfere(const json& p) {
  const int a = p["A"];
  const int b = p["B"];
  const ConditionalWeight w = conditional_weight(a, b, p["eps"], p["n"], p["grid_size"]);
  const DeltaProfile prof = delta_profile(w.weight);
  ExperimentOutput out;
  out.csv_columns = {"delta", "magnitude"};
  for (std::size_t k = 0; k < prof.delta.size(); ++k) out.csv_rows.push_back({prof.delta[k], prof.magnitude[k]});
  out.results["log_prefactor"] = w.log_prefactor;
  out.results["log_scale"] = w.log_scale;
  if (a + b > 0) {
    const auto [neg, pos] = find_peaks(w, true);
    const auto [pneg, ppos] = peak_locations(a, b);
    out.results["peaks"] = {neg, pos};
    out.results["predicted_peaks"] = {pneg, ppos};
    const double spacing = kPi / w.weight.grid_size;
    if (std::abs(pos - ppos) > spacing) out.breaches.push_back("peak position off the predicted arctan sqrt(B/A) by more than one grid step");
  }
  if (a + b >= kWidthFitMinCounts) {
    const WidthFit f = width_fit(w);
    out.results["width"] = {{"sigma_delta", f.sigma_delta},
                            {"sigma_relative_phase", f.sigma_relative_phase},
                            {"residual", f.residual},
                            {"warning", f.warning ? f.message : ""}};
  }
  return out;
}

ExperimentOutput trajectory(const json& p, std::uint64_t seed) {
  const TrajectoryResult r = run_interference_trajectory(p["n"], p["eps"], p["steps"], seed, p["grid_size"]);
  const DeltaProfile prof = delta_profile(r.state.weight);
  const FringeCurve fringe = fringe_scan(r.state, gamma_grid(p["fringe_points"]));
  ExperimentOutput out;
  out.csv_columns = {"delta", "magnitude"};
  for (std::size_t k = 0; k < prof.delta.size(); ++k) out.csv_rows.push_back({prof.delta[k], prof.magnitude[k]});
  out.results["record"] = json::parse(r.record.to_json());
  out.results["total_a"] = r.state.total_a;
  out.results["total_b"] = r.state.total_b;
  out.results["remaining"] = r.state.remaining;
  out.results["max_cap"] = r.max_cap;
  out.results["max_overflow"] = r.max_overflow;
  out.results["visibility"] = fringe.visibility;
  if (r.state.total_a + r.state.total_b > 0) {
    const auto [neg, pos] = grid_peaks(prof);
    out.results["peaks"] = {neg, pos};
    out.results["predicted_peaks"] = {-peak_locations(r.state.total_a, r.state.total_b).second,
                                      peak_locations(r.state.total_a, r.state.total_b).second};
  }
  const int n = p["n"];
  if (r.state.total_a + r.state.total_b + r.state.remaining != 2 * n) out.breaches.push_back("photon number not conserved");
  if (r.max_overflow > 1e-8) out.breaches.push_back("outcome table overflow above 1e-8");
  return out;
}

ExperimentOutput laser_equivalence(const json& p) {
  const EquivalenceReport r = decomposition_equivalence_check(p["nbar"], p["modes"], p["cutoff"]);
  ExperimentOutput out;
  out.csv_columns = {"trace_distance", "truncation_tail", "trace_number_side", "trace_coherent_side"};
  out.csv_rows.push_back({r.trace_distance, r.truncation_tail, r.trace_number_side, r.trace_coherent_side});
  out.results = {{"trace_distance", r.trace_distance},
                 {"truncation_tail", r.truncation_tail},
                 {"grid_size", r.grid_size}};
  if (r.trace_distance > 1e-8 + r.truncation_tail) out.breaches.push_back("trace distance exceeds 1e-8 + truncation tail");
  return out;
}

ExperimentOutput phase_walk(const json& p, std::uint64_t seed) {
  const PhaseWalkSpec spec{p["step_variance"], p["modes"], p["photons"], seed};
  const CoherenceEstimate g = phase_walk_correlation(spec, p["realizations"]);
  ExperimentOutput out;
  out.csv_columns = {"k", "l", "re", "im", "abs", "standard_error"};
  for (Eigen::Index k = 0; k < g.g1.rows(); ++k) {
    for (Eigen::Index l = 0; l < g.g1.cols(); ++l) {
      const cplx v = g.g1(k, l);
      out.csv_rows.push_back({double(k), double(l), v.real(), v.imag(), std::abs(v), g.standard_error(k, l)});
    }
  }
  json lags = json::array();
  const double var = p["step_variance"];
  for (Eigen::Index lag = 0; lag < g.g1.cols(); ++lag) {
    lags.push_back({{"lag", lag}, {"abs_g1", std::abs(g.g1(0, lag))}, {"predicted", std::exp(-0.5 * var * lag)}});
  }
  out.results["lags_from_mode_0"] = lags;
  out.results["realizations"] = g.realizations;
  return out;
}

ExperimentOutput homodyne(const json& p) {
  HomodyneConfig c = default_homodyne_config(p["photons"]);
  c.splitter_theta = p["splitter_theta"];
  c.mixer_phi = p["mixer_phi"];
  const double t = p["transmission"];
  const double offset = p["gamma_offset"];
  if (t == 1.0) {
    c.process = PhaseShiftProcess{offset};
  } else {
    c.process = AttenuatedPhaseProcess{t, offset};
  }
  const std::vector<double> grid = gamma_grid(p["gamma_points"]);
  const ProcessScan scan = process_tomography_scan(c, grid);
  ExperimentOutput out;
  out.csv_columns = {"gamma", "mean", "variance"};
  for (std::size_t k = 0; k < scan.gamma.size(); ++k) out.csv_rows.push_back({scan.gamma[k], scan.mean[k], scan.variance[k]});
  out.results = {{"c0", scan.c0},
                 {"c1", scan.c1},
                 {"s1", scan.s1},
                 {"r_squared", scan.r_squared},
                 {"harmonic_phase", scan.harmonic_phase},
                 {"recovered_offset", recover_phase_offset(c, grid)}};
  for (double g : {0.0, kPi / 2}) {
    if (homodyne_difference_stats(with_gamma(c, g)).number_defect != 0) out.breaches.push_back("photon number not conserved");
  }
  if (scan.r_squared < 0.99) out.breaches.push_back("mean difference is not sinusoidal in gamma (R^2 < 0.99)");
  return out;
}

ExperimentOutput squeeze(const json& p) {
  const double x = p["sqrt_n_zeta_t"];
  ExperimentOutput out;
  out.csv_columns = {"pump_n", "fidelity", "norm_deficit"};
  json weights = json::object();
  double previous = 0;
  for (int n : p["pump_n"].get<std::vector<int>>()) {
    if (n < 1) throw ValidationError("squeeze: pump_n entries must be positive");
    const cplx zt = x / std::sqrt(double(n));
    const PumpEntangledSynthesis s = synthesize_pump_entangled(n, zt, n);
    const double f = fidelity(s.state, exact_three_mode_evolution(n, zt, n));
    out.csv_rows.push_back({double(n), f, s.norm_deficit});
    weights[std::to_string(n)] = pair_weights(reduced_ab_density(s.state));
    if (f < previous) out.breaches.push_back("fidelity decreased with pump photon number at n = " + std::to_string(n));
    previous = f;
  }
  out.results["pair_weights"] = weights;
  const double t = std::tanh(x);
  out.results["ideal_ratio"] = t * t;
  return out;
}

ExperimentOutput ecs_verify(const json& p) {
  const int n = p["n"];
  const int np = p["n_prime"];
  const CouplerParams c{p["theta"], p["phi"]};
  const int cut = n + np;
  const ModeShape shape({cut, cut});
  const ECSState in = two_mode_circle(n, np, cut);
  const FockVector lhs = ecs_to_fock(ecs_apply_coupler(in, {0, 1}, c), shape);
  const FockVector rhs = apply_coupler(ecs_to_fock(in, shape), {0, 1}, c);
  const double fid = fidelity(lhs, rhs);
  ExperimentOutput out;
  out.csv_columns = {"k", "re_ecs", "im_ecs", "re_fock", "im_fock"};
  for (std::size_t k = 0; k < shape.size(); ++k) {
    out.csv_rows.push_back({double(k), lhs[k].real(), lhs[k].imag(), rhs[k].real(), rhs[k].imag()});
  }
  out.results = {{"fidelity", fid}, {"state", json::parse(to_json(lhs))}};
  if (1.0 - fid > 1e-10) out.breaches.push_back("ECS and Fock routes disagree (1 - fidelity above 1e-10)");
  return out;
}

std::string header(const ExperimentConfig& c) { return "# config_sha256=" + c.hash() + " seed=" + std::to_string(c.seed) + "\n"; }

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

}  // namespace

ExperimentOutput run_experiment(const ExperimentConfig& config) {
  const json& p = config.parameters;
  const std::string& e = config.experiment;
  if (e == "interfere") return interfere(p);
  if (e == "trajectory") return trajectory(p, config.seed);
  if (e == "laser-equivalence") return laser_equivalence(p);
  if (e == "phase-walk") return phase_walk(p, config.seed);
  if (e == "homodyne") return homodyne(p);
  if (e == "squeeze") return squeeze(p);
  if (e == "ecs-verify") return ecs_verify(p);
  throw ConfigError({"experiment: unknown experiment '" + e + "'"});
}

void write_artifacts(const ExperimentConfig& config, const ExperimentOutput& out) {
  const std::filesystem::path dir(config.output_dir);
  std::filesystem::create_directories(dir);
  const std::string hash = config.hash();

  std::string csv = header(config);
  for (std::size_t k = 0; k < out.csv_columns.size(); ++k) csv += (k ? "," : "") + out.csv_columns[k];
  csv += "\n";
  for (const auto& row : out.csv_rows) {
    for (std::size_t k = 0; k < row.size(); ++k) csv += (k ? "," : "") + format_double(row[k]);
    csv += "\n";
  }
  write_file(dir / "results.csv", csv);

  const json results = {{"config_sha256", hash}, {"seed", config.seed}, {"results", out.results}, {"breaches", out.breaches}};
  write_file(dir / "results.json", results.dump(2) + "\n");

  const json manifest = {{"config", config.resolved()},
                         {"config_sha256", hash},
                         {"seed", config.seed},
                         {"tool", "ecs"},
                         {"files", {"results.csv", "results.json"}},
                         {"status", out.breaches.empty() ? "ok" : "invariant-breach"}};
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace ecs::cli
