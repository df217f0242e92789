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

#include "ecs/coupling.hpp"
#include "ecs/sources.hpp"

namespace ecs {
namespace {

std::vector<int> occ(std::initializer_list<int> v) { return std::vector<int>(v); }

TEST(LaserDensity, Examples) {
  const NumberDiagonalDensity vac = laser_density({0.0, 5});
  EXPECT_DOUBLE_EQ(vac.weights()[0], 1.0);
  EXPECT_DOUBLE_EQ(vac.weights().tail(5).sum(), 0.0);
  EXPECT_NEAR(laser_density({4.0, 40}).weights()[4], 0.1953668148131645898, 1e-15);
}

TEST(LaserDensity, EqualsTwirledCoherentState) {
  for (double nbar : {0.5, 4.0, 9.0}) {
    const int cut = default_cutoff(nbar);
    const DensityMatrix twirled = twirl(to_density(coherent_amplitudes(std::polar(std::sqrt(nbar), 1.1), cut)));
    const Eigen::MatrixXcd laser = laser_density({nbar, cut}).to_density().entries();
    EXPECT_LE((twirled.entries() - laser).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(MultimodeOutputNumber, Examples) {
  const FockVector vac = ecs_to_fock(multimode_output_number(0, 3, 2), 2);
  EXPECT_NEAR(std::abs(vac.amplitude(occ({0, 0, 0}))), 1.0, 1e-12);

  const ModeShape two({2, 2});
  const FockVector synth = ecs_to_fock(multimode_output_number(2, 2, 2), two);
  const FockVector split = equal_multimode_split(basis_state(two, occ({2, 0})), 2);
  EXPECT_GE(fidelity(synth, split), 1.0 - 1e-10);

  const FockVector three = ecs_to_fock(multimode_output_number(3, 3, 3), 3);
  const auto d = total_number_distribution(three);
  for (std::size_t k = 0; k < d.size(); ++k) EXPECT_EQ(d[k] > 1e-28, k == 3) << k;
}

TEST(MultimodeOutputNumber, MatchesCascadeForSeveralSizes) {
  for (int modes : {1, 2, 3, 4}) {
    for (int m : {1, 3}) {
      const ModeShape s = ModeShape::uniform(modes, m);
      std::vector<int> src(static_cast<std::size_t>(modes), 0);
      src[0] = m;
      const FockVector split = equal_multimode_split(basis_state(s, src), modes);
      EXPECT_GE(fidelity(ecs_to_fock(multimode_output_number(m, modes, m), s), split), 1.0 - 1e-10) << modes << "," << m;
    }
  }
}

TEST(MultimodeOutputNumber, ConjugateWeightAlsoSynthesizesTheNumberState) {
  // e^{+im phi} weight with amplitudes sqrt(m/N) e^{-i phi} gives the same state.
  const ModeShape s({3, 3});
  const FockVector a = ecs_to_fock(multimode_output_number(3, 2, 3, false), s);
  const FockVector b = ecs_to_fock(multimode_output_number(3, 2, 3, true), s);
  EXPECT_GE(fidelity(a, b), 1.0 - 1e-10);
  EXPECT_NEAR(b.norm_squared(), 1.0, 1e-10);
}

TEST(MultimodeOutputCoherent, Examples) {
  const FockVector one = multimode_output_coherent(2.0, 0.4, 1, 20);
  EXPECT_GE(fidelity(one, coherent_amplitudes(std::polar(std::sqrt(2.0), 0.4), 20)), 1.0 - 1e-15);

  const FockVector two = multimode_output_coherent(2.0, 0.4, 2, 16);
  const int keep0[] = {0};
  const DensityMatrix m0 = partial_trace(two, keep0);
  const DensityMatrix want = to_density(coherent_amplitudes(std::polar(1.0, 0.4), 16));
  EXPECT_LE((m0.entries() - want.entries()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(MultimodeOutputCoherent, TwirlCommutesWithSplit) {
  const int cut = 10;
  const ModeShape s({cut, cut});
  const FockVector src = tensor(coherent_amplitudes(1.0, cut), basis_state(ModeShape({cut}), occ({0})));
  // Split then twirl.
  const DensityMatrix a = twirl(to_density(equal_multimode_split(src, 2)));
  // Twirl then split, with the twirled source written as its number mixture.
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(s.size()), static_cast<Eigen::Index>(s.size()));
  for (int n = 0; n <= cut; ++n) {
    const FockVector v = equal_multimode_split(basis_state(s, occ({n, 0})), 2);
    b += poisson_pmf(1.0, n) * v.amplitudes() * v.amplitudes().adjoint();
  }
  EXPECT_LE((a.entries() - b).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(DecompositionEquivalence, Examples) {
  const EquivalenceReport r1 = decomposition_equivalence_check(1.0, 2, 12);
  EXPECT_LE(r1.trace_distance, 1e-8);
  EXPECT_LE(decomposition_equivalence_check(0.0, 2, 4).trace_distance, 1e-15);
  const EquivalenceReport r2 = decomposition_equivalence_check(2.0, 3, 14);
  EXPECT_LE(r2.trace_distance, 1e-8 + r2.truncation_tail);
}

TEST(PhaseWalk, ZeroVarianceIsFullyCoherent) {
  const CoherenceEstimate g = phase_walk_correlation({0.0, 3, 6, 1}, 4);
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) EXPECT_NEAR(std::abs(g.g1(k, l)), 1.0, 1e-10);
}

TEST(PhaseWalk, HermitianWithUnitDiagonal) {
  const CoherenceEstimate g = phase_walk_correlation({0.3, 4, 2, 9}, 50);
  EXPECT_LE((g.g1 - g.g1.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(std::abs(g.g1(k, k) - 1.0), 0.0, 1e-12);
}

TEST(PhaseWalk, WalkIsSeededAndStartsAtZero) {
  const PhaseWalkSpec spec{0.1, 5, 1, 3};
  EXPECT_EQ(phase_walk(spec, 4), phase_walk(spec, 4));
  EXPECT_NE(phase_walk(spec, 4), phase_walk(spec, 5));
  EXPECT_EQ(phase_walk(spec, 4)[0], 0.0);
}

TEST(PhaseWalk, PoissonMixtureStaysNormalized) {
  const CoherenceEstimate g = phase_walk_correlation_poisson({0.0, 2, 0, 5}, 1.5, 8);
  EXPECT_NEAR(std::abs(g.g1(0, 1)), 1.0, 1e-8);
}

}  // namespace
}  // namespace ecs
