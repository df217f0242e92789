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

#include "ecs/serialize.hpp"

#include <cstdio>

#include "ecs/errors.hpp"

namespace ecs {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string envelope(const char* kind, const ModeShape& shape, const std::string& data) {
  std::string out = "{\"kind\":\"";
  out += kind;
  out += "\",\"shape\":[";
  for (int k = 0; k < shape.mode_count(); ++k) {
    if (k) out += ',';
    out += std::to_string(shape.cutoff(k));
  }
  out += "],\"data\":[" + data + "]}";
  return out;
}

void append_complex(std::string& s, cplx z, bool first) {
  if (!first) s += ',';
  s += format_double(z.real());
  s += ',';
  s += format_double(z.imag());
}

struct Parsed {
  ModeShape shape;
  std::vector<double> data;
};

Parsed parse(const std::string& text, const char* kind) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("JSON parse error: ") + e.what());
  }
  if (!j.is_object() || j.value("kind", "") != kind) throw ValidationError(std::string("expected a ") + kind + " envelope");
  if (!j.contains("shape") || !j.contains("data")) throw ValidationError("envelope missing shape or data");
  return {ModeShape(j.at("shape").get<std::vector<int>>()), j.at("data").get<std::vector<double>>()};
}

}  // namespace

std::string to_json(const FockVector& v) {
  std::string data;
  for (Eigen::Index i = 0; i < v.amplitudes().size(); ++i) append_complex(data, v.amplitudes()[i], i == 0);
  return envelope("FockVector", v.shape(), data);
}

std::string to_json(const DensityMatrix& rho) {
  std::string data;
  const auto& e = rho.entries();
  bool first = true;
  for (Eigen::Index i = 0; i < e.rows(); ++i) {
    for (Eigen::Index j = 0; j < e.cols(); ++j) {
      append_complex(data, e(i, j), first);
      first = false;
    }
  }
  return envelope("DensityMatrix", rho.shape(), data);
}

std::string to_json(const NumberDiagonalDensity& rho) {
  std::string data;
  for (Eigen::Index i = 0; i < rho.weights().size(); ++i) {
    if (i) data += ',';
    data += format_double(rho.weights()[i]);
  }
  return envelope("NumberDiagonalDensity", rho.shape(), data);
}

FockVector fock_vector_from_json(const std::string& text) {
  auto p = parse(text, "FockVector");
  if (p.data.size() != 2 * p.shape.size()) throw ValidationError("FockVector envelope: data length mismatch");
  Eigen::VectorXcd a(static_cast<Eigen::Index>(p.shape.size()));
  for (Eigen::Index i = 0; i < a.size(); ++i) a[i] = cplx(p.data[2 * i], p.data[2 * i + 1]);
  return FockVector(p.shape, a);
}

DensityMatrix density_matrix_from_json(const std::string& text) {
  auto p = parse(text, "DensityMatrix");
  const auto n = static_cast<Eigen::Index>(p.shape.size());
  if (p.data.size() != static_cast<std::size_t>(2 * n * n)) throw ValidationError("DensityMatrix envelope: data length mismatch");
  Eigen::MatrixXcd e(n, n);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j, k += 2) e(i, j) = cplx(p.data[k], p.data[k + 1]);
  }
  return DensityMatrix(p.shape, e);
}

NumberDiagonalDensity number_diagonal_from_json(const std::string& text) {
  auto p = parse(text, "NumberDiagonalDensity");
  if (p.data.size() != p.shape.size()) throw ValidationError("NumberDiagonalDensity envelope: data length mismatch");
  return NumberDiagonalDensity(p.shape, Eigen::Map<const Eigen::VectorXd>(p.data.data(), static_cast<Eigen::Index>(p.data.size())));
}

}  // namespace ecs
