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

#include "csqaoa/cop.hpp"

#include <cmath>
#include <stdexcept>

namespace csqaoa {

namespace {

void check_symmetric(const std::vector<std::vector<double>>& m,
                     const char* what) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw std::invalid_argument(std::string(what) + " matrix is not square");
    for (std::size_t j = 0; j < n; ++j)
      if (m[i][j] != m[j][i])
        throw std::invalid_argument(std::string(what) + " matrix is not symmetric");
  }
}

// Expands sum_over_groups (sum_i x_i - 1)^2 into QUBO terms.
void add_onehot_penalty(Qubo& q, const std::vector<int>& group) {
  for (std::size_t a = 0; a < group.size(); ++a) {
    q.add_linear(group[a], -1.0);
    for (std::size_t b = a + 1; b < group.size(); ++b)
      q.add(group[a], group[b], 2.0);
  }
  q.offset += 1.0;
}

}  // namespace

std::vector<std::vector<int>> VariableLayout::onehot_groups() const {
  std::vector<std::vector<int>> groups;
  if (kind == Kind::Qkp) return groups;
  for (int base = 0; base < n_qubits; base += group_size) {
    std::vector<int> g(group_size);
    for (int j = 0; j < group_size; ++j) g[j] = base + j;
    groups.push_back(std::move(g));
  }
  return groups;
}

Encoding encode_maxkcut(const MaxKCut& instance) {
  if (instance.k < 2) throw std::invalid_argument("Max-k cut requires k >= 2");
  if (instance.n_vertices < 2)
    throw std::invalid_argument("Max-k cut requires at least two vertices");
  const int k = instance.k;
  const int n_qubits = k * (instance.n_vertices - 1);

  VariableLayout layout{VariableLayout::Kind::MaxKCut, n_qubits, k};
  Qubo obj(n_qubits), cst(n_qubits);

  for (auto [u, v] : instance.edges) {
    if (u < 0 || v < 0 || u >= instance.n_vertices || v >= instance.n_vertices)
      throw std::invalid_argument("edge endpoint out of range");
    if (u == v) continue;
    if (u == 0 || v == 0) {
      // Vertex 0 sits in subset 1; the shared-subset product survives only
      // for the other endpoint's first variable.
      int i = (u == 0) ? v : u;
      obj.add_linear(layout.maxkcut_qubit(i, 1), -1.0);
    } else {
      for (int s = 1; s <= k; ++s)
        obj.add(layout.maxkcut_qubit(u, s), layout.maxkcut_qubit(v, s), -1.0);
    }
  }
  for (int i = 1; i < instance.n_vertices; ++i) {
    std::vector<int> group(k);
    for (int s = 1; s <= k; ++s) group[s - 1] = layout.maxkcut_qubit(i, s);
    add_onehot_penalty(cst, group);
  }
  return Encoding{std::move(obj), std::move(cst), layout};
}

Encoding encode_qap(const Qap& instance) {
  if (instance.n_f < 2) throw std::invalid_argument("QAP requires n_f >= 2");
  check_symmetric(instance.flow, "flow");
  check_symmetric(instance.dist, "distance");
  const int n = instance.n_f;
  const int n_qubits = n * n;

  VariableLayout layout{VariableLayout::Kind::Qap, n_qubits, n};
  Qubo obj(n_qubits), cst(n_qubits);

  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (j == i) continue;
      for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) {
          if (b == a) continue;
          double w = instance.flow[i - 1][j - 1] * instance.dist[a - 1][b - 1];
          obj.add(layout.qap_qubit(i, a), layout.qap_qubit(j, b), w);
        }
    }
  for (int i = 1; i <= n; ++i) {  // each facility at exactly one location
    std::vector<int> group(n);
    for (int a = 1; a <= n; ++a) group[a - 1] = layout.qap_qubit(i, a);
    add_onehot_penalty(cst, group);
  }
  for (int a = 1; a <= n; ++a) {  // each location holds exactly one facility
    std::vector<int> group(n);
    for (int i = 1; i <= n; ++i) group[i - 1] = layout.qap_qubit(i, a);
    add_onehot_penalty(cst, group);
  }
  return Encoding{std::move(obj), std::move(cst), layout};
}

Encoding encode_qkp(const Qkp& instance) {
  if (instance.capacity <= 0.0)
    throw std::invalid_argument("knapsack capacity must be positive");
  const int n = instance.n_items;
  VariableLayout layout{VariableLayout::Kind::Qkp, n, 1};
  Qubo obj(n), cst(n);

  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      obj.add(i, j, -instance.profit_at(i, j));

  // (sum_i w_i x_i / C)^2
  for (int i = 0; i < n; ++i) {
    double wi = instance.weights[i] / instance.capacity;
    cst.add_linear(i, wi * wi);
    for (int j = i + 1; j < n; ++j)
      cst.add(i, j, 2.0 * wi * instance.weights[j] / instance.capacity);
  }
  return Encoding{std::move(obj), std::move(cst), layout};
}

Encoding encode(const CopInstance& instance) {
  return std::visit(
      [](const auto& inst) -> Encoding {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, MaxKCut>) return encode_maxkcut(inst);
        else if constexpr (std::is_same_v<T, Qap>) return encode_qap(inst);
        else return encode_qkp(inst);
      },
      instance);
}

int num_qubits(const CopInstance& instance) {
  return std::visit(
      [](const auto& inst) -> int {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, MaxKCut>)
          return inst.k * (inst.n_vertices - 1);
        else if constexpr (std::is_same_v<T, Qap>)
          return inst.n_f * inst.n_f;
        else
          return inst.n_items;
      },
      instance);
}

bool check_feasible(const CopInstance& instance, std::uint64_t bits) {
  if (const auto* mc = std::get_if<MaxKCut>(&instance)) {
    const int k = mc->k;
    for (int i = 1; i < mc->n_vertices; ++i) {
      int ones = 0;
      for (int s = 0; s < k; ++s) ones += (bits >> ((i - 1) * k + s)) & 1;
      if (ones != 1) return false;
    }
    return true;
  }
  if (const auto* qap = std::get_if<Qap>(&instance)) {
    const int n = qap->n_f;
    for (int i = 0; i < n; ++i) {  // facility rows
      int ones = 0;
      for (int a = 0; a < n; ++a) ones += (bits >> (a * n + i)) & 1;
      if (ones != 1) return false;
    }
    for (int a = 0; a < n; ++a) {  // location columns
      int ones = 0;
      for (int i = 0; i < n; ++i) ones += (bits >> (a * n + i)) & 1;
      if (ones != 1) return false;
    }
    return true;
  }
  const auto& qkp = std::get<Qkp>(instance);
  double total = 0.0;
  for (int i = 0; i < qkp.n_items; ++i)
    if ((bits >> i) & 1) total += qkp.weights[i];
  return total <= qkp.capacity + 1e-9;
}

double objective_value(const CopInstance& instance, std::uint64_t bits) {
  return encode(instance).objective.value(bits);
}

std::string problem_name(const CopInstance& instance) {
  if (const auto* mc = std::get_if<MaxKCut>(&instance))
    return "max" + std::to_string(mc->k) + "cut";
  if (std::holds_alternative<Qap>(instance)) return "qap";
  return "qkp";
}

int problem_size(const CopInstance& instance) {
  return std::visit(
      [](const auto& inst) -> int {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, MaxKCut>) return inst.n_vertices;
        else if constexpr (std::is_same_v<T, Qap>) return inst.n_f;
        else return inst.n_items;
      },
      instance);
}

}  // namespace csqaoa
