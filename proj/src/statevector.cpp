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

#include "csqaoa/statevector.hpp"

#include <cmath>
#include <stdexcept>

namespace csqaoa {

Statevector Statevector::basis(int n, std::uint64_t index) {
  Statevector s(n);
  if (index >= s.dim()) throw std::out_of_range("basis index out of range");
  s.amps[index] = 1.0;
  return s;
}

Statevector Statevector::uniform(int n) {
  Statevector s(n);
  double a = 1.0 / std::sqrt(static_cast<double>(s.dim()));
  for (auto& amp : s.amps) amp = a;
  return s;
}

double Statevector::norm_sq() const {
  double acc = 0.0;
  for (const auto& a : amps) acc += std::norm(a);
  return acc;
}

double Statevector::norm() const { return std::sqrt(norm_sq()); }

void Statevector::normalize() {
  double n = norm();
  if (n == 0.0) throw std::runtime_error("cannot normalize zero vector");
  double inv = 1.0 / n;
  for (auto& a : amps) a *= inv;
}

complex_t Statevector::inner(const Statevector& other) const {
  if (other.dim() != dim()) throw std::invalid_argument("dimension mismatch");
  complex_t acc = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) acc += std::conj(amps[i]) * other.amps[i];
  return acc;
}

double expectation_diagonal(const Statevector& state,
                            const std::vector<double>& diag) {
  if (diag.size() != state.dim())
    throw std::invalid_argument("diagonal length mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < diag.size(); ++i)
    acc += diag[i] * std::norm(state.amps[i]);
  return acc;
}

Projection project_zeros(const Statevector& state,
                         const std::vector<int>& qubits) {
  if (qubits.empty()) throw std::invalid_argument("empty projection set");
  std::uint64_t mask = 0;
  for (int q : qubits) {
    if (q < 0 || q >= state.n_qubits)
      throw std::out_of_range("projection qubit out of range");
    mask |= std::uint64_t{1} << q;
  }
  Projection out;
  for (std::size_t i = 0; i < state.dim(); ++i)
    if ((i & mask) == 0) out.prob_zero += std::norm(state.amps[i]);
  if (out.prob_zero <= 0.0) {
    out.discarded = true;
    return out;
  }
  out.state = Statevector(state.n_qubits);
  double inv = 1.0 / std::sqrt(out.prob_zero);
  for (std::size_t i = 0; i < state.dim(); ++i)
    if ((i & mask) == 0) out.state.amps[i] = state.amps[i] * inv;
  return out;
}

std::uint64_t sample_basis(const Statevector& state, Rng& rng) {
  double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    acc += std::norm(state.amps[i]);
    if (u < acc) return i;
  }
  return state.dim() - 1;  // guard against rounding at u ~ 1
}

}  // namespace csqaoa
