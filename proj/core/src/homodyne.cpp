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

#include "ecs/homodyne.hpp"

#include <cmath>
#include <string>

#include "ecs/coupling.hpp"
#include "ecs/errors.hpp"
#include "ecs/measurement.hpp"

namespace ecs {

HomodyneConfig default_homodyne_config(int source_photons) {
  HomodyneConfig c;
  c.source_photons = source_photons;
  c.splitter_theta = std::acos(0.95);
  return c;
}

FockVector split_common_source(int n, double theta, int cutoff) {
  if (n < 0) throw DomainError("split_common_source: negative photon number");
  if (cutoff < n) throw ValidationError("split_common_source: cutoff below n");
  const ModeShape shape({cutoff, cutoff});
  return apply_coupler(basis_state(shape, std::vector<int>{n, 0}), {0, 1}, {theta, -kPi / 2});
}

ECSState split_common_source_ecs(int n, double theta, int cutoff) {
  const ECSState circle = number_state_on_circle(n, n, cutoff, 4 * cutoff + 4);
  Eigen::MatrixXcd coeff = Eigen::MatrixXcd::Zero(2, 1);
  coeff(0, 0) = circle.coefficients()(0, 0);
  const ECSState two(circle.grids(), circle.orientation(), coeff, circle.weight(), circle.weight_bands());
  return ecs_apply_coupler(two, {0, 1}, {theta, -kPi / 2});
}

Eigen::MatrixXcd quadrature_matrix(double theta_q, int cutoff) {
  const Eigen::MatrixXcd a = annihilation_matrix(cutoff);
  return (std::polar(1.0, theta_q) * a + std::polar(1.0, -theta_q) * a.adjoint()) / std::sqrt(2.0);
}

namespace {

// Applies V to mode 1; may append an ancilla mode 2.
FockVector apply_process(const FockVector& state, const ProcessSpec& process) {
  if (const auto* p = std::get_if<PhaseShiftProcess>(&process)) return phase_shift(state, 1, p->gamma);
  if (const auto* p = std::get_if<AttenuatedPhaseProcess>(&process)) {
    if (!(p->transmission >= 0.0 && p->transmission <= 1.0)) throw DomainError("attenuated process: transmission must lie in [0, 1]");
    const int cut = state.shape().cutoff(1);
    FockVector s = tensor(state, basis_state(ModeShape({cut}), std::vector<int>{0}));
    s = apply_coupler(s, {1, 2}, {std::acos(std::sqrt(p->transmission)), 0.0});
    return phase_shift(s, 1, p->gamma);
  }
  const auto& m = std::get<MatrixProcess>(process).matrix;
  const int cut = state.shape().cutoff(1);
  if (m.rows() != cut + 1 || m.cols() != cut + 1) {
    throw ValidationError("matrix process: expected " + std::to_string(cut + 1) + "x" + std::to_string(cut + 1));
  }
  if (unitarity_defect(m) > 1e-10) throw ValidationError("matrix process: not unitary to 1e-10");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(state.amplitudes().size());
  const ModeShape& shape = state.shape();
  const std::size_t s1 = shape.stride(1);
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (shape.occupation(i, 1) != 0) continue;
    const Eigen::VectorXcd col = Eigen::Map<const Eigen::VectorXcd, 0, Eigen::InnerStride<>>(
        state.amplitudes().data() + i, cut + 1, Eigen::InnerStride<>(static_cast<Eigen::Index>(s1)));
    const Eigen::VectorXcd mapped = m * col;
    for (int k = 0; k <= cut; ++k) out[static_cast<Eigen::Index>(i + k * s1)] = mapped[k];
  }
  return FockVector(shape, out);
}

}  // namespace

DifferenceStats homodyne_difference_stats(const HomodyneConfig& config) {
  const int n = config.source_photons;
  FockVector s = split_common_source(n, config.splitter_theta, n);
  s = apply_process(s, config.process);
  s = apply_coupler(s, {0, 1}, {kPi / 4, config.mixer_phi});
  const bool ancilla = s.shape().mode_count() == 3;
  const CountDistribution dist = joint_count_distribution(s, ancilla ? std::vector<int>{0, 1, 2} : std::vector<int>{0, 1});
  DifferenceStats out;
  for (const auto& [k, p] : dist.probabilities) {
    if (p == 0.0) continue;
    const int d = k[0] - k[1];
    out.distribution[d] += p;
    const int lost = ancilla ? k[2] : 0;
    out.number_defect = std::max(out.number_defect, std::abs(k[0] + k[1] + lost - n));
  }
  for (const auto& [d, p] : out.distribution) out.mean += d * p;
  for (const auto& [d, p] : out.distribution) out.variance += (d - out.mean) * (d - out.mean) * p;
  return out;
}

HomodyneConfig with_gamma(const HomodyneConfig& config, double gamma) {
  HomodyneConfig c = config;
  if (auto* p = std::get_if<PhaseShiftProcess>(&c.process)) {
    p->gamma = gamma;
  } else if (auto* q = std::get_if<AttenuatedPhaseProcess>(&c.process)) {
    q->gamma = gamma;
  } else {
    throw ValidationError("process scan requires a phase-shift or attenuated-phase process");
  }
  return c;
}

namespace {

double process_phase(const HomodyneConfig& config) {
  if (const auto* p = std::get_if<PhaseShiftProcess>(&config.process)) return p->gamma;
  if (const auto* q = std::get_if<AttenuatedPhaseProcess>(&config.process)) return q->gamma;
  throw ValidationError("process scan requires a phase-shift or attenuated-phase process");
}

}  // namespace

ProcessScan process_tomography_scan(const HomodyneConfig& config, const std::vector<double>& gamma_grid) {
  if (gamma_grid.size() < 3) throw ValidationError("process_tomography_scan: need at least three gamma values");
  const double base = process_phase(config);
  ProcessScan scan;
  scan.gamma = gamma_grid;
  for (double g : gamma_grid) {
    const DifferenceStats st = homodyne_difference_stats(with_gamma(config, base + g));
    scan.mean.push_back(st.mean);
    scan.variance.push_back(st.variance);
  }
  Eigen::MatrixXd x(static_cast<Eigen::Index>(gamma_grid.size()), 3);
  Eigen::VectorXd y(static_cast<Eigen::Index>(gamma_grid.size()));
  for (std::size_t k = 0; k < gamma_grid.size(); ++k) {
    const auto r = static_cast<Eigen::Index>(k);
    x(r, 0) = 1.0;
    x(r, 1) = std::cos(gamma_grid[k]);
    x(r, 2) = std::sin(gamma_grid[k]);
    y[r] = scan.mean[k];
  }
  const LeastSquares fit = least_squares(x, y);
  scan.c0 = fit.coefficients[0];
  scan.c1 = fit.coefficients[1];
  scan.s1 = fit.coefficients[2];
  scan.r_squared = fit.r_squared;
  scan.harmonic_phase = std::atan2(-scan.s1, scan.c1);
  return scan;
}

double recover_phase_offset(const HomodyneConfig& config, const std::vector<double>& gamma_grid) {
  const ProcessScan probe = process_tomography_scan(config, gamma_grid);
  const ProcessScan reference = process_tomography_scan(with_gamma(config, 0.0), gamma_grid);
  return wrap_signed(probe.harmonic_phase - reference.harmonic_phase);
}

}  // namespace ecs
