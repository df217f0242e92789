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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "ecs/errors.hpp"
#include "ecs/fock.hpp"

namespace ecs {
namespace {

std::vector<int> occ(std::initializer_list<int> v) { return std::vector<int>(v); }

TEST(ModeShape, RowMajorWithLastModeFastest) {
  const ModeShape s({2, 3});
  EXPECT_EQ(s.size(), 12u);
  EXPECT_EQ(s.index(occ({0, 1})), 1u);
  EXPECT_EQ(s.index(occ({1, 0})), 4u);
  EXPECT_EQ(s.occupation(7), occ({1, 3}));
  EXPECT_EQ(s.occupation(7, 1), 3);
  EXPECT_EQ(s.total_capacity(), 5);
}

TEST(ModeShape, RejectsInvalidAndOversizedShapes) {
  EXPECT_THROW(ModeShape(std::vector<int>{}), ValidationError);
  EXPECT_THROW(ModeShape({-1}), ValidationError);
  try {
    ModeShape::uniform(5, 40);
    FAIL();
  } catch (const SizingError& e) {
    EXPECT_NE(std::string(e.what()).find("largest uniform cutoff"), std::string::npos);
  }
}

TEST(Poisson, Examples) {
  EXPECT_DOUBLE_EQ(poisson_pmf(0.0, 0), 1.0);
  EXPECT_DOUBLE_EQ(poisson_pmf(0.0, 3), 0.0);
  EXPECT_NEAR(poisson_pmf(1.0, 1), 0.3678794411714423216, 1e-15);
  EXPECT_NEAR(poisson_pmf(4.0, 4), 0.1953668148131645898, 1e-15);
  EXPECT_THROW(poisson_pmf(-1.0, 0), DomainError);
}

TEST(Poisson, MeanAndVarianceRecovered) {
  for (double nbar : {0.5, 7.0, 64.0, 300.0}) {
    const int cut = default_cutoff(nbar);
    double s = 0, m = 0, m2 = 0;
    for (int n = 0; n <= cut; ++n) {
      const double p = poisson_pmf(nbar, n);
      s += p;
      m += n * p;
      m2 += double(n) * n * p;
    }
    EXPECT_NEAR(m, nbar, 1e-9 * std::max(1.0, nbar));
    EXPECT_NEAR(m2 - m * m, nbar, 1e-9 * std::max(1.0, nbar));
    EXPECT_GE(s, 1.0 - poisson_tail(nbar, cut) - 1e-13);
  }
}

TEST(Poisson, TailMatchesComplement) {
  double head = 0;
  for (int n = 0; n <= 3; ++n) head += poisson_pmf(5.0, n);
  EXPECT_NEAR(poisson_tail(5.0, 3), 1.0 - head, 1e-15);
  // Deep tail, computed directly rather than by cancellation.
  EXPECT_GT(poisson_tail(1.0, 30), 0.0);
  EXPECT_LT(poisson_tail(1.0, 30), 1e-30);
}

TEST(Coherent, Examples) {
  const FockVector vac = coherent_amplitudes(0.0, 5);
  EXPECT_EQ(vac[0], cplx(1.0));
  for (std::size_t i = 1; i < 6; ++i) EXPECT_EQ(vac[i], cplx(0.0));
  EXPECT_NEAR(std::norm(coherent_amplitudes(1.0, 10)[1]), 0.3678794411714423216, 1e-15);
  // Reference: sum_{n<=12} Pi_n(2) evaluated in 40-digit arithmetic.
  const FockVector c = coherent_amplitudes(std::polar(std::sqrt(2.0), kPi / 3), 12);
  EXPECT_NEAR(c.norm_squared(), 0.99999979265304186297, 1e-14);
}

TEST(Coherent, LargeAmplitudeStaysFinite) {
  const FockVector c = coherent_amplitudes(20.0, default_cutoff(400.0));
  EXPECT_NEAR(c.norm_squared(), 1.0, 1e-12);
}

TEST(PhaseShift, Examples) {
  const ModeShape s({5});
  const FockVector three = basis_state(s, occ({3}));
  EXPECT_NEAR(fidelity(phase_shift(three, 0, 0.0), three), 1.0, 1e-15);
  const FockVector two = basis_state(s, occ({2}));
  const FockVector shifted = phase_shift(two, 0, 0.7);
  EXPECT_NEAR(std::abs(shifted[2] - std::polar(1.0, 1.4)), 0.0, 1e-15);
  EXPECT_NEAR((to_density(shifted).entries() - to_density(two).entries()).cwiseAbs().maxCoeff(), 0.0, 1e-15);
  const FockVector rotated = phase_shift(coherent_amplitudes(1.0, 20), 0, kPi / 2);
  EXPECT_GE(fidelity(rotated, coherent_amplitudes(cplx(0, 1), 20)), 1.0 - 1e-12);
}

TEST(PhaseShift, PreservesNorm) {
  const ModeShape s({6, 6});
  const cplx alphas[] = {cplx(0.8, 0.3), cplx(-0.2, 1.1)};
  const FockVector c = coherent_product(alphas, s);
  EXPECT_NEAR(phase_shift(c, 1, 2.1).norm_squared(), c.norm_squared(), 1e-15);
}

DensityMatrix random_density(const ModeShape& s, unsigned seed) {
  std::srand(seed);
  const auto d = static_cast<Eigen::Index>(s.size());
  const Eigen::MatrixXcd g = Eigen::MatrixXcd::Random(d, d);
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(s, rho);
}

TEST(Twirl, Examples) {
  const ModeShape s({6});
  const DensityMatrix n3 = to_density(basis_state(s, occ({3})));
  EXPECT_NEAR((twirl(n3).entries() - n3.entries()).cwiseAbs().maxCoeff(), 0.0, 1e-15);

  Eigen::VectorXcd plus = Eigen::VectorXcd::Zero(7);
  plus[0] = plus[1] = 1.0 / std::sqrt(2.0);
  const DensityMatrix t = twirl(to_density(FockVector(s, plus)));
  EXPECT_NEAR(t.entries()(0, 1).real(), 0.0, 1e-15);
  EXPECT_NEAR(t.entries()(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(t.entries()(1, 1).real(), 0.5, 1e-15);

  const ModeShape big({40});
  const DensityMatrix coh = twirl(to_density(coherent_amplitudes(std::polar(2.0, 0.4), 40)));
  for (int n = 0; n <= 40; ++n) EXPECT_NEAR(coh.entries()(n, n).real(), poisson_pmf(4.0, n), 1e-15);
  EXPECT_NEAR(coh.entries().diagonal().sum().real(), coh.entries().trace().real(), 0.0);
}

TEST(Twirl, IsIdempotentInvariantAndTracePreserving) {
  const ModeShape s({3, 2});
  const DensityMatrix rho = random_density(s, 11);
  const DensityMatrix once = twirl(rho);
  EXPECT_LE((twirl(once).entries() - once.entries()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(once.trace().real(), rho.trace().real(), 1e-12);
  for (double delta : {0.3, 1.7, -2.2}) {
    // P(delta) rho P(delta)^dag with the shift on every mode.
    Eigen::VectorXcd ph(static_cast<Eigen::Index>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i) ph[static_cast<Eigen::Index>(i)] = std::polar(1.0, delta * (s.occupation(i, 0) + s.occupation(i, 1)));
    const Eigen::MatrixXcd rotated = ph.asDiagonal() * rho.entries() * ph.conjugate().asDiagonal();
    EXPECT_LE((twirl(DensityMatrix(s, rotated)).entries() - once.entries()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Twirl, SubsetOfModesKeepsOtherCoherences) {
  const ModeShape s({1, 1});
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v[s.index(occ({1, 0}))] = v[s.index(occ({1, 1}))] = 1.0 / std::sqrt(2.0);
  const DensityMatrix rho = to_density(FockVector(s, v));
  const int first[] = {0};
  const int second[] = {1};
  EXPECT_NEAR(std::abs(twirl(rho, first).entries()(2, 3)), 0.5, 1e-15);
  EXPECT_NEAR(std::abs(twirl(rho, second).entries()(2, 3)), 0.0, 1e-15);
}

TEST(Twirl, RejectsNonHermitian) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(twirl(DensityMatrix(ModeShape({1}), m)), ValidationError);
}

TEST(NumberDiagonal, ValidatesWeights) {
  EXPECT_THROW(NumberDiagonalDensity(ModeShape({1}), Eigen::Vector2d(0.7, 0.7)), ValidationError);
  EXPECT_THROW(NumberDiagonalDensity(ModeShape({1}), Eigen::Vector2d(-0.1, 0.7)), ValidationError);
  const NumberDiagonalDensity ok(ModeShape({1}), Eigen::Vector2d(0.25, 0.5));
  EXPECT_NEAR(ok.to_density().trace().real(), 0.75, 1e-15);
}

TEST(RadialP, NarrowBumpApproachesPoisson) {
  // Gaussian in nbar of width 0.05 at nbar = 3, normalized so 2 \int P = 1.
  const double w = 0.05;
  RadialP p;
  p.density = [w](double x) { return 0.5 * std::exp(-(x - 3) * (x - 3) / (2 * w * w)) / (std::sqrt(2 * kPi) * w); };
  p.upper_bound = 10.0;
  // 40-digit quadrature of the same integrals.
  EXPECT_NEAR(p_n_from_radial_P(p, 0), 0.049849341115682729155, 1e-9);
  EXPECT_NEAR(p_n_from_radial_P(p, 3), 0.22394847639077064126, 1e-9);
  EXPECT_NEAR(p_n_from_radial_P(p, 5), 0.10080483122448200881, 1e-9);
  EXPECT_NEAR(p_n_from_radial_P(p, 3), poisson_pmf(3.0, 3), 2e-4);
  EXPECT_TRUE(is_semiclassical(p));
}

TEST(RadialP, AtomsReproduceLaserAndVacuum) {
  RadialP laser;
  laser.atoms = {{4.0, 1.0}};
  double total = 0;
  for (int n = 0; n <= 40; ++n) {
    EXPECT_NEAR(p_n_from_radial_P(laser, n), poisson_pmf(4.0, n), 1e-15);
    total += p_n_from_radial_P(laser, n);
  }
  EXPECT_NEAR(total, 1.0, 1e-6);
  RadialP vac;
  vac.atoms = {{0.0, 1.0}};
  EXPECT_DOUBLE_EQ(p_n_from_radial_P(vac, 0), 1.0);
}

TEST(RadialP, ThermalDensitySumsToOne) {
  // Thermal source: P = e^{-x/m}/(2 m) gives Bose-Einstein p_n.
  const double m = 1.5;
  RadialP p;
  p.density = [m](double x) { return std::exp(-x / m) / (2 * m); };
  p.upper_bound = 80.0;
  double total = 0;
  for (int n = 0; n <= 60; ++n) {
    const double pn = p_n_from_radial_P(p, n);
    EXPECT_NEAR(pn, std::pow(m, n) / std::pow(1 + m, n + 1), 1e-10);
    total += pn;
  }
  EXPECT_NEAR(total, 1.0, 1e-6);
}

TEST(RadialP, DetectsNonClassicalDensity) {
  RadialP p;
  p.density = [](double x) { return x < 1 ? -0.1 : 0.1; };
  p.upper_bound = 2.0;
  EXPECT_FALSE(is_semiclassical(p));
}

TEST(Multilinear, Examples) {
  const ModeShape s({3});
  for (int n = 0; n <= 3; ++n)
    for (int m = 0; m <= 3; ++m)
      EXPECT_EQ(inner(basis_state(s, occ({n})), basis_state(s, occ({m}))), cplx(n == m ? 1.0 : 0.0));

  const ModeShape two({1, 1});
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v[two.index(occ({1, 0}))] = v[two.index(occ({0, 1}))] = 1.0 / std::sqrt(2.0);
  const int keep[] = {1};
  const DensityMatrix r = partial_trace(to_density(FockVector(two, v)), keep);
  EXPECT_NEAR(r.entries()(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(r.entries()(1, 1).real(), 0.5, 1e-15);
  EXPECT_NEAR(std::abs(r.entries()(0, 1)), 0.0, 1e-15);

  const cplx a(0.4, -0.3), b(-0.9, 0.2);
  const FockVector t = tensor(coherent_amplitudes(a, 8), coherent_amplitudes(b, 6));
  const cplx ab[] = {a, b};
  const FockVector direct = coherent_product(ab, ModeShape({8, 6}));
  EXPECT_LE((t.amplitudes() - direct.amplitudes()).cwiseAbs().maxCoeff(), 1e-16);
}

TEST(Multilinear, PartialTracePreservesTraceAndMatchesPureRoute) {
  const ModeShape s({2, 1, 2});
  const DensityMatrix rho = random_density(s, 5);
  for (const std::vector<int>& keep : {std::vector<int>{0}, std::vector<int>{2, 0}, std::vector<int>{1, 2}}) {
    EXPECT_NEAR(partial_trace(rho, keep).trace().real(), 1.0, 1e-12);
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Random(static_cast<Eigen::Index>(s.size()));
  const FockVector psi = FockVector(s, v).normalized();
  const std::vector<int> keep{2, 0};
  EXPECT_LE((partial_trace(psi, keep).entries() - partial_trace(to_density(psi), keep).entries()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Multilinear, ShapeMismatchRejected) {
  EXPECT_THROW(inner(basis_state(ModeShape({1}), occ({0})), basis_state(ModeShape({2}), occ({0}))), ValidationError);
}

TEST(Multilinear, TraceDistanceAndSchmidt) {
  const ModeShape s({1});
  const DensityMatrix z = to_density(basis_state(s, occ({0})));
  const DensityMatrix o = to_density(basis_state(s, occ({1})));
  EXPECT_NEAR(trace_distance(z.entries(), o.entries()), 1.0, 1e-15);
  const ModeShape two({1, 1});
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v[0] = v[3] = 1.0 / std::sqrt(2.0);
  const int first[] = {0};
  EXPECT_NEAR(entanglement_entropy(FockVector(two, v), first), std::log(2.0), 1e-14);
}

TEST(Quadratures, CommutatorIsIAwayFromTheCutoff) {
  const int cut = 30;
  const Eigen::MatrixXcd a = annihilation_matrix(cut);
  const Eigen::MatrixXcd q = (a + a.adjoint()) / std::sqrt(2.0);
  const Eigen::MatrixXcd p = (a - a.adjoint()) / cplx(0, std::sqrt(2.0));
  const Eigen::MatrixXcd c = q * p - p * q;
  // Supported on n <= cutoff - 2: the top level is a truncation artifact.
  const FockVector psi = coherent_amplitudes(cplx(1.2, 0.5), cut - 2).reshaped(ModeShape({cut}));
  const cplx expect = psi.amplitudes().dot(c * psi.amplitudes()) / psi.norm_squared();
  EXPECT_NEAR(std::abs(expect - cplx(0, 1)), 0.0, 1e-9);
  EXPECT_GT(std::abs(c(cut, cut) - cplx(0, 1)), 1.0);
}

}  // namespace
}  // namespace ecs
