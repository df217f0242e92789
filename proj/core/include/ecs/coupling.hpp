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

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ecs/fock.hpp"

namespace ecs {

/// Linear coupler U(theta, phi) = exp(theta e^{-i phi} a^dag b - theta e^{i phi} a b^dag).
/// theta = pi/4 is the 50/50 splitter.
struct CouplerParams {
  double theta = 0.0;
  double phi = 0.0;
};

/// Action on coherent amplitudes: U|alpha, beta> = |alpha', beta'> with
/// (alpha', beta')^T = M (alpha, beta)^T and
///   M = [[cos theta, e^{-i phi} sin theta], [-e^{i phi} sin theta, cos theta]].
Eigen::Matrix2cd heisenberg_matrix(const CouplerParams& params);

/// U restricted to the N-photon sector of two modes. Column and row k stand
/// for |k, N-k) (k photons in the first mode).
struct BlockUnitary {
  int total_photons = 0;
  Eigen::MatrixXcd matrix;
};

/// Largest sector handled by coupler_block / oracle_block.
inline constexpr int kMaxBlockPhotons = 4096;

/// Matrix elements from the binomial expansion of the transformed creation
/// operators, accumulated in quad precision.
BlockUnitary coupler_block(const CouplerParams& params, int total_photons);

/// Independent oracle: exponential of the tridiagonal generator block.
BlockUnitary oracle_block(const CouplerParams& params, int total_photons);

/// Applies U to modes (i, j) of a state, sector by sector. Amplitude pushed
/// above either cutoff is discarded (hard truncation); it is exactly zero
/// whenever n_i + n_j never exceeds min(cutoff_i, cutoff_j) in the input.
FockVector apply_coupler(const FockVector& state, std::pair<int, int> modes, const CouplerParams& params);

/// One coupler of a fixed network.
struct CouplerStep {
  std::pair<int, int> modes;
  CouplerParams params;
};

/// Network that sends the amplitude of mode 0 equally into modes 0..n_out-1
/// with a common phase: a balanced binary tree when n_out is a power of two,
/// otherwise a sequential fan-out with sin theta_k = 1/sqrt(n_out - k + 1).
std::vector<CouplerStep> split_cascade(int n_out);

/// Composite coherent-amplitude matrix of a network on `mode_count` modes.
Eigen::MatrixXcd network_mode_matrix(const std::vector<CouplerStep>& steps, int mode_count);

/// Runs split_cascade(n_out) on a state whose only occupied mode is 0.
/// The state must have exactly n_out modes; occupied ancillas are rejected.
FockVector equal_multimode_split(const FockVector& state, int n_out);

}  // namespace ecs
