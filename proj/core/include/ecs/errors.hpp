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

#include <stdexcept>
#include <string>

namespace ecs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation
/// (negative mean photon number, empty circle radius, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Inputs are well-typed but inconsistent: shape mismatch, non-Hermitian
/// density, undersized phase grid, unnormalized state.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A request would exceed the basis-size cap or another resource budget.
class SizingError : public Error {
 public:
  using Error::Error;
};

/// Iterative numerics failed to converge. Carries the last residual.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace ecs
