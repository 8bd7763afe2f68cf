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

#ifndef CSQAOA_QUBO_HPP_
#define CSQAOA_QUBO_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace csqaoa {

// Quadratic binary objective Q(x) = sum_{i<=j} Q_ij x_i x_j + Q_0 in
// canonical upper-triangular form; add() folds (j, i) into (i, j).
struct Qubo {
  int n = 0;
  std::map<std::pair<int, int>, double> coeffs;  // key (i, j) with i <= j
  double offset = 0.0;

  explicit Qubo(int n_vars = 0) : n(n_vars) {}

  void add(int i, int j, double value);
  void add_linear(int i, double value) { add(i, i, value); }

  double value(std::uint64_t bits) const;

  // this + scale * other (dimensions must match).
  Qubo plus_scaled(const Qubo& other, double scale) const;
  void scale(double factor);
};

// Spin form: E(s) = sum_{i<j} J_ij s_i s_j + sum_i h_i s_i + H0 with
// s_i = 2 x_i - 1.
struct IsingModel {
  int n = 0;
  std::map<std::pair<int, int>, double> J;  // key (i, j) with i < j
  std::vector<double> h;
  double H0 = 0.0;

  explicit IsingModel(int n_spins = 0) : n(n_spins), h(n_spins, 0.0) {}

  double energy(std::uint64_t bits) const;
  double max_abs_coeff() const;
  void scale(double factor);

  // Full diagonal over the 2^n computational basis (n <= 24 guard).
  std::vector<double> diagonal() const;

  std::string to_json() const;
};

IsingModel qubo_to_ising(const Qubo& q);

// energy_of in bitstring form; identical to IsingModel::energy.
double energy_of(const IsingModel& ising, std::uint64_t bits);

struct Assembled {
  Qubo qubo;          // (Q_obj + A Q_cst) / norm
  IsingModel ising;   // matching spin form
  double norm = 1.0;  // chosen so max(|J|, |h|) = 1
  bool normalized = true;  // false when all couplings vanish (norm kept at 1)
  double A = 0.0;
};

// Penalty assembly Q = (Q_obj + A * Q_cst) / N with N fixed by the Ising
// normalization. A zero-coupling combination is returned unnormalized and
// flagged.
Assembled assemble(const Qubo& objective, const Qubo& constraint, double A);

std::string qubo_to_json(const Qubo& q);

}  // namespace csqaoa

#endif  // CSQAOA_QUBO_HPP_
