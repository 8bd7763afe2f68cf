// Copyright 2026 The csqaoa-lab Authors
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

#include "csqaoa/qubo.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace csqaoa {

void Qubo::add(int i, int j, double value) {
  if (i < 0 || j < 0 || i >= n || j >= n)
    throw std::out_of_range("qubo variable index out of range");
  if (value == 0.0) return;
  if (i > j) std::swap(i, j);
  coeffs[{i, j}] += value;
}

double Qubo::value(std::uint64_t bits) const {
  double acc = offset;
  for (const auto& [ij, v] : coeffs) {
    bool xi = (bits >> ij.first) & 1;
    bool xj = (bits >> ij.second) & 1;
    if (xi && xj) acc += v;
  }
  return acc;
}

Qubo Qubo::plus_scaled(const Qubo& other, double scale) const {
  if (other.n != n) throw std::invalid_argument("qubo dimension mismatch");
  Qubo out = *this;
  for (const auto& [ij, v] : other.coeffs) out.coeffs[ij] += scale * v;
  out.offset += scale * other.offset;
  return out;
}

void Qubo::scale(double factor) {
  for (auto& [ij, v] : coeffs) v *= factor;
  offset *= factor;
}

double IsingModel::energy(std::uint64_t bits) const {
  double acc = H0;
  for (const auto& [ij, v] : J) {
    double si = ((bits >> ij.first) & 1) ? 1.0 : -1.0;
    double sj = ((bits >> ij.second) & 1) ? 1.0 : -1.0;
    acc += v * si * sj;
  }
  for (int i = 0; i < n; ++i)
    acc += h[i] * (((bits >> i) & 1) ? 1.0 : -1.0);
  return acc;
}

double IsingModel::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [ij, v] : J) m = std::max(m, std::abs(v));
  for (double v : h) m = std::max(m, std::abs(v));
  return m;
}

void IsingModel::scale(double factor) {
  for (auto& [ij, v] : J) v *= factor;
  for (double& v : h) v *= factor;
  H0 *= factor;
}

std::vector<double> IsingModel::diagonal() const {
  if (n > 24) throw std::invalid_argument("Ising diagonal capped at 24 spins");
  const std::size_t dim = std::size_t{1} << n;
  std::vector<double> diag(dim, H0);
  for (int i = 0; i < n; ++i) {
    if (h[i] == 0.0) continue;
    const std::uint64_t bit = std::uint64_t{1} << i;
    for (std::size_t x = 0; x < dim; ++x)
      diag[x] += (x & bit) ? h[i] : -h[i];
  }
  for (const auto& [ij, v] : J) {
    const std::uint64_t b1 = std::uint64_t{1} << ij.first;
    const std::uint64_t b2 = std::uint64_t{1} << ij.second;
    for (std::size_t x = 0; x < dim; ++x) {
      bool differ = static_cast<bool>(x & b1) != static_cast<bool>(x & b2);
      diag[x] += differ ? -v : v;
    }
  }
  return diag;
}

IsingModel qubo_to_ising(const Qubo& q) {
  IsingModel ising(q.n);
  ising.H0 = q.offset;
  for (const auto& [ij, v] : q.coeffs) {
    int i = ij.first, j = ij.second;
    if (i == j) {
      // v x_i = v (s_i + 1) / 2
      ising.h[i] += v / 2.0;
      ising.H0 += v / 2.0;
    } else {
      // v x_i x_j = v (s_i s_j + s_i + s_j + 1) / 4
      ising.J[{i, j}] += v / 4.0;
      ising.h[i] += v / 4.0;
      ising.h[j] += v / 4.0;
      ising.H0 += v / 4.0;
    }
  }
  return ising;
}

double energy_of(const IsingModel& ising, std::uint64_t bits) {
  return ising.energy(bits);
}

Assembled assemble(const Qubo& objective, const Qubo& constraint, double A) {
  if (A < 0.0) throw std::invalid_argument("constraint coefficient must be >= 0");
  Assembled out;
  out.A = A;
  out.qubo = objective.plus_scaled(constraint, A);
  IsingModel raw = qubo_to_ising(out.qubo);
  double m = raw.max_abs_coeff();
  if (m == 0.0) {
    out.norm = 1.0;
    out.normalized = false;
    out.ising = raw;
    return out;
  }
  out.norm = m;
  out.qubo.scale(1.0 / m);
  raw.scale(1.0 / m);
  out.ising = raw;
  return out;
}

std::string qubo_to_json(const Qubo& q) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [ij, v] : q.coeffs)
    entries.push_back({ij.first, ij.second, v});
  nlohmann::json j{{"n", q.n}, {"entries", entries}, {"offset", q.offset}};
  return j.dump();
}

std::string IsingModel::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [ij, v] : J) entries.push_back({ij.first, ij.second, v});
  for (int i = 0; i < n; ++i)
    if (h[i] != 0.0) entries.push_back({i, i, h[i]});
  nlohmann::json j{{"n", n}, {"entries", entries}, {"offset", H0}};
  return j.dump();
}

}  // namespace csqaoa
