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

#ifndef CSQAOA_STATEVECTOR_HPP_
#define CSQAOA_STATEVECTOR_HPP_

#include <complex>
#include <cstdint>
#include <vector>

#include "csqaoa/rng.hpp"

namespace csqaoa {

using complex_t = std::complex<double>;

// Dense state vector over n qubits. Qubit q corresponds to bit q of the
// basis index, and the sign convention is sigma_z |x> = (2x - 1)|x>, i.e.
// |0> has sigma_z eigenvalue -1 and |1> has +1.
struct Statevector {
  int n_qubits = 0;
  std::vector<complex_t> amps;

  Statevector() = default;
  explicit Statevector(int n) : n_qubits(n), amps(std::size_t{1} << n) {}

  std::size_t dim() const { return amps.size(); }

  static Statevector basis(int n, std::uint64_t index);
  static Statevector uniform(int n);  // |+>^n

  double norm_sq() const;
  double norm() const;
  void normalize();

  complex_t inner(const Statevector& other) const;  // <this|other>

  // Probability mass on one basis state.
  double probability(std::uint64_t index) const {
    return std::norm(amps[index]);
  }
};

// Sum_x diag[x] * |amp[x]|^2. Lengths must match.
double expectation_diagonal(const Statevector& state,
                            const std::vector<double>& diag);

struct Projection {
  double prob_zero = 0.0;
  Statevector state;     // renormalized component, valid only if !discarded
  bool discarded = false;  // projection had zero probability
};

// Project the listed qubits onto |0>, returning the probability of the
// all-zero outcome and the renormalized post-measurement state.
Projection project_zeros(const Statevector& state,
                         const std::vector<int>& qubits);

// Draw a basis index with probability |amp[x]|^2.
std::uint64_t sample_basis(const Statevector& state, Rng& rng);

}  // namespace csqaoa

#endif  // CSQAOA_STATEVECTOR_HPP_
