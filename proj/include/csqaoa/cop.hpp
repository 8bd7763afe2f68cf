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

#ifndef CSQAOA_COP_HPP_
#define CSQAOA_COP_HPP_

#include <string>
#include <variant>
#include <vector>

#include "csqaoa/qubo.hpp"

namespace csqaoa {

// Max-k cut on a graph. Vertex 0 is fixed to the first subset at encode
// time, so variables exist only for vertices 1..n_vertices-1.
struct MaxKCut {
  int n_vertices = 0;
  std::vector<std::pair<int, int>> edges;
  int k = 2;
};

// Quadratic assignment: symmetric flow and distance matrices, zero diagonal.
struct Qap {
  int n_f = 0;
  std::vector<std::vector<double>> flow;
  std::vector<std::vector<double>> dist;
};

// Quadratic knapsack: upper-triangular profits p[i][j] (j >= i), positive
// weights, positive capacity.
struct Qkp {
  int n_items = 0;
  std::vector<std::vector<double>> profit;  // profit[i][j - i]
  std::vector<double> weights;
  double capacity = 0.0;

  double profit_at(int i, int j) const {  // i <= j
    return profit[i][j - i];
  }
};

using CopInstance = std::variant<MaxKCut, Qap, Qkp>;

// Mapping between problem variables and flat qubit indices.
//   Max-k cut: x_{i,s} (vertex i in 1..n-1, subset s in 1..k) -> (i-1)*k+(s-1)
//   QAP: x_{i,a} (facility i, location a, both 1-based) -> (a-1)*n_f+(i-1)
//   QKP: item i (1-based) -> i-1
struct VariableLayout {
  enum class Kind { MaxKCut, Qap, Qkp } kind;
  int n_qubits = 0;
  int group_size = 0;  // k for Max-k cut, n_f for QAP

  int maxkcut_qubit(int vertex, int subset) const {
    return (vertex - 1) * group_size + (subset - 1);
  }
  int qap_qubit(int facility, int location) const {
    return (location - 1) * group_size + (facility - 1);
  }
  // One-hot variable groups: per non-fixed vertex for Max-k cut, per
  // location for QAP.
  std::vector<std::vector<int>> onehot_groups() const;
};

struct Encoding {
  Qubo objective;
  Qubo constraint;
  VariableLayout layout;
};

Encoding encode_maxkcut(const MaxKCut& instance);
Encoding encode_qap(const Qap& instance);
Encoding encode_qkp(const Qkp& instance);
Encoding encode(const CopInstance& instance);

int num_qubits(const CopInstance& instance);
bool check_feasible(const CopInstance& instance, std::uint64_t bits);

// Value of the encoding's objective QUBO at a bitstring (the quantity the
// oracle minimizes over feasible assignments).
double objective_value(const CopInstance& instance, std::uint64_t bits);

std::string problem_name(const CopInstance& instance);
int problem_size(const CopInstance& instance);  // |V_m|, n_f, or n_i

}  // namespace csqaoa

#endif  // CSQAOA_COP_HPP_
