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

#ifndef CSQAOA_HCS_HPP_
#define CSQAOA_HCS_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "csqaoa/rng.hpp"

namespace csqaoa {

enum class ConstraintKind {
  OneHot,      // sum x_i = 1
  ParityEven,  // sum x_i even
  ParityOdd,   // sum x_i odd
  Range,       // l <= g <= u
  LowerOnly,   // g >= l
  UpperOnly,   // g <= u
  General,     // arbitrary predicate over the variables
};

// One constraint l <= g({x_i}, i in V) <= u with integer-valued
// g = sum_i a_i x_i + c, or a general predicate on the variables.
struct ConstraintSpec {
  ConstraintKind kind = ConstraintKind::Range;
  std::vector<int> variables;   // qubit indices V
  std::vector<double> coeffs;   // a_i, defaults to all ones
  double constant = 0.0;        // + c
  double lower = 0.0;
  double upper = 0.0;
  std::function<bool(std::uint64_t)> predicate;  // General kind only;
                                                 // argument is the local
                                                 // assignment of V in listed
                                                 // order (bit j = variables[j])

  double g(std::uint64_t bits) const;  // linear form on full-register bits
  bool satisfied(std::uint64_t bits) const;
  std::string describe() const;

  static ConstraintSpec sum_range(const std::vector<int>& vars, double lo,
                                  double hi);
  static ConstraintSpec weighted_upper(const std::vector<int>& vars,
                                       const std::vector<double>& weights,
                                       double capacity);
  static ConstraintSpec one_hot(const std::vector<int>& vars);
  static ConstraintSpec parity(const std::vector<int>& vars, bool odd);
};

// Feasible assignments of an n_total-qubit register under the constraint
// (n_total <= 24).
std::vector<std::uint64_t> enumerate_feasible(int n_total,
                                              const ConstraintSpec& spec);

// Diagonal compressed-space Hamiltonian: ranks every feasible basis state
// strictly below every infeasible one and breaks all degeneracies with a
// small random per-qubit tilt.
struct CompressedHamiltonian {
  int n_qubits = 0;
  std::vector<double> diag;     // 2^n values
  std::vector<double> epsilon;  // per-qubit tilt, max |eps| < 1/(2n)
};

// Base term by kind: Range (g-l)(g-u); LowerOnly -(g-l); UpperOnly (g-u);
// OneHot as Range with l = u = 1; parity and General as a 0/1 feasibility
// indicator. Tilt drawn uniformly from [-0.05, 0.05) then rescaled to keep
// max |eps| < 1/(2n); redraws on a degenerate spectrum, failing loudly
// after 10 attempts.
CompressedHamiltonian build_hcs(int n_total, const ConstraintSpec& spec,
                                Rng& rng);

struct HcsAudit {
  bool diagonal_ok = true;       // by construction
  bool nondegenerate = false;    // all eigenvalue gaps > 1e-12
  bool separated = false;        // E_F^max < E_IF^min
  double feasible_max = 0.0;
  double infeasible_min = 0.0;
};

HcsAudit audit_hcs(const CompressedHamiltonian& h, const ConstraintSpec& spec);

// Mean of the 2^m smallest diagonal values: the attainable minimum of the
// compression objective, used as a training oracle.
double low_energy_mean(const CompressedHamiltonian& h, int m);

}  // namespace csqaoa

#endif  // CSQAOA_HCS_HPP_
