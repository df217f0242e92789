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

#include "ecs/sources.hpp"

#include <cmath>
#include <map>
#include <random>

#include "ecs/errors.hpp"
#include "ecs/parallel.hpp"

namespace ecs {

NumberDiagonalDensity laser_density(const LaserSpec& spec) {
  if (spec.nbar < 0.0) throw DomainError("laser_density: negative nbar");
  if (spec.cutoff < 0) throw ValidationError("laser_density: negative cutoff");
  Eigen::VectorXd w(spec.cutoff + 1);
  for (int n = 0; n <= spec.cutoff; ++n) w[n] = poisson_pmf(spec.nbar, n);
  return NumberDiagonalDensity(ModeShape({spec.cutoff}), w);
}

ECSState multimode_output_number(int m, int n_modes, int cutoff, bool conjugate, int grid_size) {
  if (m < 0) throw DomainError("multimode_output_number: negative photon number");
  if (n_modes < 1) throw ValidationError("multimode_output_number: at least one mode required");
  const ModeShape shape = ModeShape::uniform(n_modes, cutoff);  // sizing check
  const int sign = conjugate ? 1 : -1;
  const int required = std::max(m, n_modes * cutoff - m) + 1;
  const PhaseGrid grid(grid_size > 0 ? grid_size : std::max(default_grid_size(cutoff), required));
  const double norm = m == 0 ? 1.0 : 1.0 / std::sqrt(poisson_pmf(m, m));
  std::vector<cplx> w(static_cast<std::size_t>(grid.size()));
  for (int k = 0; k < grid.size(); ++k) w[static_cast<std::size_t>(k)] = std::polar(norm, sign * m * grid.phase(k));
  const Eigen::MatrixXcd coeff = Eigen::MatrixXcd::Constant(n_modes, 1, std::sqrt(static_cast<double>(m) / n_modes));
  const FrequencyBand band{sign * m, sign * m};
  return ECSState({grid}, {conjugate ? -1 : 1}, coeff, std::move(w), {band});
}

FockVector multimode_output_coherent(double nbar, double phi, int n_modes, int cutoff) {
  if (nbar < 0.0) throw DomainError("multimode_output_coherent: negative nbar");
  const ModeShape shape = ModeShape::uniform(n_modes, cutoff);
  const std::vector<cplx> alphas(static_cast<std::size_t>(n_modes), std::polar(std::sqrt(nbar / n_modes), phi));
  return coherent_product(alphas, shape);
}

EquivalenceReport decomposition_equivalence_check(double nbar, int n_modes, int cutoff) {
  if (nbar < 0.0) throw DomainError("decomposition_equivalence_check: negative nbar");
  const ModeShape shape = ModeShape::uniform(n_modes, cutoff);
  const int top = shape.total_capacity();

  // Basis indices of each total-number sector.
  std::vector<std::vector<std::size_t>> sectors(static_cast<std::size_t>(top) + 1);
  std::vector<int> position(shape.size());
  for (std::size_t i = 0; i < shape.size(); ++i) {
    int t = 0;
    for (int k = 0; k < n_modes; ++k) t += shape.occupation(i, k);
    position[i] = static_cast<int>(sectors[static_cast<std::size_t>(t)].size());
    sectors[static_cast<std::size_t>(t)].push_back(i);
  }
  std::vector<Eigen::MatrixXcd> lhs(sectors.size());
  std::vector<Eigen::MatrixXcd> rhs(sectors.size());
  for (std::size_t t = 0; t < sectors.size(); ++t) {
    const auto d = static_cast<Eigen::Index>(sectors[t].size());
    lhs[t] = Eigen::MatrixXcd::Zero(d, d);
    rhs[t] = Eigen::MatrixXcd::Zero(d, d);
  }

  // Number-state side: every m that fits in the truncated space.
  for (int m = 0; m <= top; ++m) {
    const double pm = poisson_pmf(nbar, m);
    if (pm == 0.0) continue;
    const FockVector out = ecs_to_fock(multimode_output_number(m, n_modes, cutoff), shape);
    for (std::size_t t = 0; t < sectors.size(); ++t) {
      Eigen::VectorXcd v(static_cast<Eigen::Index>(sectors[t].size()));
      for (std::size_t r = 0; r < sectors[t].size(); ++r) v[static_cast<Eigen::Index>(r)] = out[sectors[t][r]];
      if (v.squaredNorm() == 0.0) continue;
      lhs[t] += pm * v * v.adjoint();
    }
  }

  // Coherent side: phase average by quadrature, exact for M > 2 * top.
  const int grid = 2 * top + 2;
  for (int k = 0; k < grid; ++k) {
    const FockVector coh = multimode_output_coherent(nbar, kTwoPi * k / grid, n_modes, cutoff);
    for (std::size_t t = 0; t < sectors.size(); ++t) {
      Eigen::VectorXcd v(static_cast<Eigen::Index>(sectors[t].size()));
      for (std::size_t r = 0; r < sectors[t].size(); ++r) v[static_cast<Eigen::Index>(r)] = coh[sectors[t][r]];
      rhs[t] += (v * v.adjoint()) / static_cast<double>(grid);
    }
  }

  EquivalenceReport rep;
  rep.grid_size = grid;
  for (std::size_t t = 0; t < sectors.size(); ++t) {
    rep.trace_distance += trace_distance(lhs[t], rhs[t]);
    rep.trace_number_side += lhs[t].trace().real();
    rep.trace_coherent_side += rhs[t].trace().real();
  }
  rep.truncation_tail = std::min(1.0, n_modes * poisson_tail(nbar / n_modes, cutoff));
  return rep;
}

std::vector<double> phase_walk(const PhaseWalkSpec& spec, std::uint64_t realization) {
  if (spec.step_variance < 0.0) throw DomainError("phase_walk: negative step variance");
  std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                    static_cast<std::uint32_t>(realization), static_cast<std::uint32_t>(realization >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> step(0.0, std::sqrt(spec.step_variance));
  std::vector<double> phases(static_cast<std::size_t>(spec.mode_count), 0.0);
  for (std::size_t k = 1; k < phases.size(); ++k) phases[k] = phases[k - 1] + (spec.step_variance > 0.0 ? step(rng) : 0.0);
  return phases;
}

Eigen::MatrixXcd first_order_moments(const FockVector& state) {
  const ModeShape& shape = state.shape();
  const int n = shape.mode_count();
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t i = 0; i < shape.size(); ++i) {
    const cplx a = state[i];
    if (a == cplx(0.0)) continue;
    for (int l = 0; l < n; ++l) {
      const int nl = shape.occupation(i, l);
      if (nl == 0) continue;
      for (int k = 0; k < n; ++k) {
        // b_k^dag b_l |..n_k..n_l..> lands on index j.
        if (k == l) {
          g(k, l) += std::norm(a) * static_cast<double>(nl);
          continue;
        }
        const int nk = shape.occupation(i, k);
        if (nk + 1 > shape.cutoff(k)) continue;
        const std::size_t j = i + shape.stride(k) - shape.stride(l);
        g(k, l) += std::conj(state[j]) * a * std::sqrt(static_cast<double>((nk + 1) * nl));
      }
    }
  }
  return g;
}

namespace {

Eigen::MatrixXcd normalized_g1(const FockVector& state) {
  const Eigen::MatrixXcd g = first_order_moments(state);
  Eigen::MatrixXcd out(g.rows(), g.cols());
  for (Eigen::Index k = 0; k < g.rows(); ++k) {
    for (Eigen::Index l = 0; l < g.cols(); ++l) out(k, l) = g(k, l) / std::sqrt(g(k, k).real() * g(l, l).real());
  }
  return out;
}

FockVector walk_state(const PhaseWalkSpec& spec, int photons, const std::vector<double>& phases) {
  // Number state |m) of the normalized mode sum_k e^{i xi_k} b_k / sqrt(N),
  // synthesized from its circle representation.
  const int cutoff = photons;
  ECSState base = multimode_output_number(photons, spec.mode_count, cutoff);
  for (int k = 0; k < spec.mode_count; ++k) base = ecs_apply_phase(base, k, phases[static_cast<std::size_t>(k)]);
  return ecs_to_fock(base, ModeShape::uniform(spec.mode_count, cutoff));
}

CoherenceEstimate average(const PhaseWalkSpec& spec, int realizations,
                          const std::function<int(std::uint64_t)>& photons_for) {
  if (realizations < 1) throw ValidationError("phase_walk_correlation: realizations must be at least 1");
  if (spec.mode_count < 1) throw ValidationError("phase_walk_correlation: mode_count must be at least 1");
  std::vector<Eigen::MatrixXcd> samples(static_cast<std::size_t>(realizations));
  parallel_for(samples.size(), [&](std::size_t r) {
    const auto phases = phase_walk(spec, r);
    samples[r] = normalized_g1(walk_state(spec, photons_for(r), phases));
  });
  const int n = spec.mode_count;
  CoherenceEstimate est;
  est.realizations = realizations;
  est.g1 = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& s : samples) est.g1 += s;
  est.g1 /= static_cast<double>(realizations);
  est.standard_error = Eigen::MatrixXd::Zero(n, n);
  if (realizations > 1) {
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        const cplx mean = est.g1(k, l);
        const cplx dir = std::abs(mean) > 0.0 ? mean / std::abs(mean) : cplx(1.0);
        double ss = 0.0;
        for (const auto& s : samples) {
          const double x = std::real(s(k, l) * std::conj(dir)) - std::abs(mean);
          ss += x * x;
        }
        est.standard_error(k, l) = std::sqrt(ss / (realizations - 1) / realizations);
      }
    }
  }
  return est;
}

}  // namespace

CoherenceEstimate phase_walk_correlation(const PhaseWalkSpec& spec, int realizations) {
  if (spec.photons < 1) throw DomainError("phase_walk_correlation: at least one photon required");
  return average(spec, realizations, [&](std::uint64_t) { return spec.photons; });
}

CoherenceEstimate phase_walk_correlation_poisson(const PhaseWalkSpec& spec, double nbar, int realizations) {
  if (nbar <= 0.0) throw DomainError("phase_walk_correlation_poisson: nbar must be positive");
  return average(spec, realizations, [&](std::uint64_t r) {
    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed ^ 0x9e3779b9u), static_cast<std::uint32_t>(r), 7u};
    std::mt19937_64 rng(seq);
    std::poisson_distribution<int> draw(nbar);
    int m = 0;
    while (m == 0) m = draw(rng);
    return m;
  });
}

}  // namespace ecs
