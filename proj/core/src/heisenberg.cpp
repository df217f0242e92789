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

#include "ecs/coupling.hpp"

namespace ecs {

Eigen::Matrix2cd heisenberg_matrix(const CouplerParams& params) {
  const double c = std::cos(params.theta);
  const double s = std::sin(params.theta);
  Eigen::Matrix2cd m;
#ifdef ECS_MUTATE_HEISENBERG_SIGN
  m << c, std::polar(s, -params.phi), std::polar(s, params.phi), c;
#else
  m << c, std::polar(s, -params.phi), -std::polar(s, params.phi), c;
#endif
  return m;
}

}  // namespace ecs
