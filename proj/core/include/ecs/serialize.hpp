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

#include <string>

#include <nlohmann/json.hpp>

#include "ecs/fock.hpp"

namespace ecs {

// JSON envelope: {"kind": ..., "shape": [cutoffs], "data": [...]}. Complex
// data is interleaved (re, im); matrices are row-major. Numbers are written
// with 17 significant digits so a round trip is exact.

std::string to_json(const FockVector& v);
std::string to_json(const DensityMatrix& rho);
std::string to_json(const NumberDiagonalDensity& rho);

FockVector fock_vector_from_json(const std::string& text);
DensityMatrix density_matrix_from_json(const std::string& text);
NumberDiagonalDensity number_diagonal_from_json(const std::string& text);

/// Decimal rendering used for every number the tools write: %.17g.
std::string format_double(double x);

}  // namespace ecs
