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

#include "ecs/coupling.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "ecs/errors.hpp"

namespace ecs {

namespace {

void check_sector(int total_photons, const char* who) {
  if (total_photons < 0) throw DomainError(std::string(who) + ": negative photon number");
  if (total_photons > kMaxBlockPhotons) {
    throw SizingError(std::string(who) + ": sector of " + std::to_string(total_photons) +
                      " photons exceeds the limit of " + std::to_string(kMaxBlockPhotons));
  }
}

}  // namespace

BlockUnitary coupler_block(const CouplerParams& params, int total_photons) {
  check_sector(total_photons, "coupler_block");
  using Q = __float128;
  const int n = total_photons;
  const Q c = cosq(static_cast<Q>(params.theta));
  const Q s = sinq(static_cast<Q>(params.theta));
  std::vector<Q> cp(n + 1, 1), sp(n + 1, 1), lf(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    cp[i] = cp[i - 1] * c;
    sp[i] = sp[i - 1] * s;
    lf[i] = lf[i - 1] + logq(static_cast<Q>(i));
  }
  // Rows of Pascal's triangle, built by the multiplicative recurrence.
  auto binomial_row = [](int a, std::vector<Q>& row) {
    row.assign(static_cast<std::size_t>(a) + 1, 1);
    for (int i = 0; i < a; ++i) row[i + 1] = row[i] * (a - i) / (i + 1);
  };

  // (c a^dag - e^{i phi} s b^dag)^k (e^{-i phi} s a^dag + c b^dag)^{N-k} |0,0)
  // normalized by sqrt(k!(N-k)!). The phase e^{i phi (k-p)} factors out of
  // every term, so only the real sum needs extended precision.
  BlockUnitary out{n, Eigen::MatrixXcd(n + 1, n + 1)};
  std::vector<Q> bk, bnk;
  for (int k = 0; k <= n; ++k) {
    binomial_row(k, bk);
    binomial_row(n - k, bnk);
    for (int p = 0; p <= n; ++p) {
      Q sum = 0;
      for (int i = std::max(0, p - (n - k)); i <= std::min(k, p); ++i) {
        const int j = p - i;
        const Q t = bk[i] * bnk[j] * cp[i + n - k - j] * sp[k - i + j];
        sum += ((k - i) % 2) ? -t : t;
      }
      sum *= expq(0.5Q * (lf[p] + lf[n - p] - lf[k] - lf[n - k]));
      out.matrix(p, k) = static_cast<double>(sum) * std::polar(1.0, params.phi * (k - p));
    }
  }
  return out;
}

BlockUnitary oracle_block(const CouplerParams& params, int total_photons) {
  check_sector(total_photons, "oracle_block");
  const int n = total_photons;
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  const cplx up = std::polar(params.theta, -params.phi);
  const cplx down = -std::polar(params.theta, params.phi);
  for (int k = 0; k <= n; ++k) {
    if (k < n) g(k + 1, k) = up * std::sqrt(static_cast<double>((k + 1) * (n - k)));
    if (k > 0) g(k - 1, k) = down * std::sqrt(static_cast<double>(k * (n - k + 1)));
  }
  return {n, expm_series(g)};
}

FockVector apply_coupler(const FockVector& state, std::pair<int, int> modes, const CouplerParams& params) {
  const ModeShape& shape = state.shape();
  const auto [mi, mj] = modes;
  if (mi == mj) throw ValidationError("apply_coupler: modes must be distinct");
  if (mi < 0 || mj < 0 || mi >= shape.mode_count() || mj >= shape.mode_count()) {
    throw ValidationError("apply_coupler: invalid mode index");
  }
  const int ci = shape.cutoff(mi);
  const int cj = shape.cutoff(mj);
  const std::size_t si = shape.stride(mi);
  const std::size_t sj = shape.stride(mj);
  const Eigen::VectorXcd& in = state.amplitudes();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(in.size());

  std::vector<std::size_t> bases;
  for (std::size_t idx = 0; idx < shape.size(); ++idx) {
    if (shape.occupation(idx, mi) == 0 && shape.occupation(idx, mj) == 0) bases.push_back(idx);
  }
  std::map<int, Eigen::MatrixXcd> blocks;
  Eigen::VectorXcd sector;
  for (int total = 0; total <= ci + cj; ++total) {
    const int kmin = std::max(0, total - cj);
    const int kmax = std::min(ci, total);
    for (std::size_t base : bases) {
      bool any = false;
      sector.setZero(total + 1);
      for (int k = kmin; k <= kmax; ++k) {
        const cplx a = in[static_cast<Eigen::Index>(base + k * si + (total - k) * sj)];
        sector[k] = a;
        any = any || a != cplx(0.0);
      }
      if (!any) continue;
      auto it = blocks.find(total);
      if (it == blocks.end()) it = blocks.emplace(total, coupler_block(params, total).matrix).first;
      const Eigen::VectorXcd mapped = it->second * sector;
      for (int k = kmin; k <= kmax; ++k) {
        out[static_cast<Eigen::Index>(base + k * si + (total - k) * sj)] = mapped[k];
      }
    }
  }
  return FockVector(shape, std::move(out));
}

std::vector<CouplerStep> split_cascade(int n_out) {
  if (n_out < 1) throw ValidationError("split_cascade: n_out must be at least 1");
  std::vector<CouplerStep> steps;
  if ((n_out & (n_out - 1)) == 0) {
    for (int stride = n_out / 2; stride >= 1; stride /= 2) {
      for (int m = 0; m < n_out; m += 2 * stride) steps.push_back({{m, m + stride}, {kPi / 4, kPi}});
    }
    return steps;
  }
  for (int k = 1; k < n_out; ++k) {
    steps.push_back({{0, k}, {std::asin(1.0 / std::sqrt(static_cast<double>(n_out - k + 1))), kPi}});
  }
  return steps;
}

Eigen::MatrixXcd network_mode_matrix(const std::vector<CouplerStep>& steps, int mode_count) {
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Identity(mode_count, mode_count);
  for (const auto& step : steps) {
    const Eigen::Matrix2cd m = heisenberg_matrix(step.params);
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Identity(mode_count, mode_count);
    const int i = step.modes.first;
    const int j = step.modes.second;
    e(i, i) = m(0, 0);
    e(i, j) = m(0, 1);
    e(j, i) = m(1, 0);
    e(j, j) = m(1, 1);
    total = e * total;
  }
  return total;
}

FockVector equal_multimode_split(const FockVector& state, int n_out) {
  const ModeShape& shape = state.shape();
  if (shape.mode_count() != n_out) throw ValidationError("equal_multimode_split: state must have n_out modes");
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (state[i] == cplx(0.0)) continue;
    for (int k = 1; k < n_out; ++k) {
      if (shape.occupation(i, k) != 0) throw ValidationError("equal_multimode_split: ancilla mode " + std::to_string(k) + " is occupied");
    }
  }
  FockVector current = state;
  for (const auto& step : split_cascade(n_out)) current = apply_coupler(current, step.modes, step.params);
  return current;
}

}  // namespace ecs
