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

#include "csqaoa/compressor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "csqaoa/noise.hpp"

namespace csqaoa {

namespace {

int ceil_log2(std::uint64_t x) {
  int m = 0;
  while ((std::uint64_t{1} << m) < x) ++m;
  return m;
}

void apply_perm(Statevector& state, const PermTable& perm, bool dagger) {
  const std::uint64_t table_dim = perm.table.size();
  const std::size_t dim = state.dim();
  std::vector<complex_t> scratch(dim);
  for (std::uint64_t base = 0; base < dim; base += table_dim) {
    if (dagger) {
      for (std::uint64_t x = 0; x < table_dim; ++x)
        scratch[base + x] = state.amps[base + perm.table[x]];
    } else {
      for (std::uint64_t x = 0; x < table_dim; ++x)
        scratch[base + perm.table[x]] = state.amps[base + x];
    }
  }
  state.amps.swap(scratch);
}

void check_bijection(const std::vector<std::uint64_t>& p) {
  std::vector<bool> seen(p.size(), false);
  for (std::uint64_t y : p) {
    if (y >= p.size() || seen[y])
      throw std::logic_error("permutation table is not a bijection");
    seen[y] = true;
  }
}

std::vector<int> complement(int n, const std::vector<int>& qubits) {
  std::vector<bool> in(n, false);
  for (int q : qubits) in[q] = true;
  std::vector<int> out;
  for (int q = 0; q < n; ++q)
    if (!in[q]) out.push_back(q);
  return out;
}

// Multi-controlled X with positive controls, expanded to the CNOT/T level.
// Needs one borrowable qubit once there are three or more controls.
void emit_mcx(Circuit& c, std::vector<int> controls, int target,
              std::vector<int> borrows) {
  if (controls.empty()) {
    c.gates.push_back(PauliX{target});
    return;
  }
  if (controls.size() == 1) {
    c.gates.push_back(Cnot{controls[0], target});
    return;
  }
  if (controls.size() == 2) {
    for (const auto& g : toffoli_network(controls[0], controls[1], target))
      c.gates.push_back(g);
    return;
  }
  // C^k X = [C^{k-1}X(A -> d), TOFF(ck, d, t)] twice, with d borrowed dirty.
  int d = -1;
  for (int q : borrows)
    if (q != target && std::find(controls.begin(), controls.end(), q) == controls.end()) {
      d = q;
      break;
    }
  if (d < 0)
    throw std::invalid_argument(
        "multi-controlled X with >2 controls needs a borrowable qubit");
  int last = controls.back();
  std::vector<int> rest(controls.begin(), controls.end() - 1);
  std::vector<int> sub_borrows{target};
  for (int q : borrows)
    if (q != d) sub_borrows.push_back(q);
  for (int repeat = 0; repeat < 2; ++repeat) {
    emit_mcx(c, rest, d, sub_borrows);
    for (const auto& g : toffoli_network(last, d, target)) c.gates.push_back(g);
  }
}

}  // namespace

std::uint64_t Compressor::zero_mask() const {
  std::uint64_t mask = 0;
  for (int q : zero_qubits) mask |= std::uint64_t{1} << q;
  return mask;
}

std::uint64_t Compressor::sector_index(std::uint64_t compressed) const {
  std::uint64_t idx = 0;
  for (std::size_t j = 0; j < compressed_qubits.size(); ++j)
    if ((compressed >> j) & 1) idx |= std::uint64_t{1} << compressed_qubits[j];
  return idx;
}

void Compressor::apply(Statevector& state, bool dagger) const {
  if (state.n_qubits < n_qubits)
    throw std::invalid_argument("state narrower than compressor");
  if (!dagger) {
    for (const auto& stage : stages) {
      if (const auto* p = std::get_if<PermTable>(&stage))
        apply_perm(state, *p, false);
      else
        apply_circuit(state, std::get<Circuit>(stage));
    }
  } else {
    for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
      if (const auto* p = std::get_if<PermTable>(&*it))
        apply_perm(state, *p, true);
      else {
        Circuit inv = inverse_circuit(std::get<Circuit>(*it));
        apply_circuit(state, inv);
      }
    }
  }
}

bool Compressor::is_classical() const {
  for (const auto& stage : stages) {
    if (std::holds_alternative<PermTable>(stage)) continue;
    for (const auto& g : std::get<Circuit>(stage).gates)
      if (!is_classical_gate(g)) return false;
  }
  return true;
}

std::uint64_t Compressor::classical_map(std::uint64_t x, bool dagger) const {
  if (!dagger) {
    for (const auto& stage : stages) {
      if (const auto* p = std::get_if<PermTable>(&stage))
        x = p->table[x];
      else
        x = classical_image(x, std::get<Circuit>(stage));
    }
  } else {
    for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
      if (const auto* p = std::get_if<PermTable>(&*it)) {
        for (std::uint64_t cand = 0; cand < p->table.size(); ++cand)
          if (p->table[cand] == x) {
            x = cand;
            break;
          }
      } else {
        // Classical gates are involutions, so the adjoint is just the
        // reversed gate order; no circuit allocation in this hot path.
        const auto& gates = std::get<Circuit>(*it).gates;
        for (auto g = gates.rbegin(); g != gates.rend(); ++g)
          x = classical_image(x, *g);
      }
    }
  }
  return x;
}

Circuit Compressor::noisy_gates(bool dagger) const {
  Circuit base;
  if (gate_form.has_value()) {
    base = *gate_form;
  } else {
    bool all_circuits = true;
    for (const auto& stage : stages)
      if (!std::holds_alternative<Circuit>(stage)) all_circuits = false;
    if (!all_circuits)
      throw std::runtime_error(
          "compressor '" + kind + "' has no gate form for noisy runs");
    for (const auto& stage : stages) base.append(std::get<Circuit>(stage));
  }
  return dagger ? inverse_circuit(base) : base;
}

Compressor Compressor::identity(int n_qubits) {
  Compressor c;
  c.n_qubits = n_qubits;
  c.compressed_qubits.resize(n_qubits);
  std::iota(c.compressed_qubits.begin(), c.compressed_qubits.end(), 0);
  c.kind = "identity";
  c.gate_form = Circuit{};
  return c;
}

Compressor compose(const Compressor& first, const Compressor& then) {
  if (first.n_qubits != then.n_qubits)
    throw std::invalid_argument("compressor widths differ");
  Compressor out;
  out.n_qubits = first.n_qubits;
  out.stages = first.stages;
  out.stages.insert(out.stages.end(), then.stages.begin(), then.stages.end());

  std::set<int> zeros(first.zero_qubits.begin(), first.zero_qubits.end());
  zeros.insert(then.zero_qubits.begin(), then.zero_qubits.end());
  out.zero_qubits.assign(zeros.begin(), zeros.end());
  out.compressed_qubits = complement(out.n_qubits, out.zero_qubits);

  if (first.gate_form.has_value() && then.gate_form.has_value()) {
    Circuit g = *first.gate_form;
    g.append(*then.gate_form);
    out.gate_form = std::move(g);
  }
  out.kind = first.kind.empty() ? then.kind
             : then.kind.empty() ? first.kind
                                 : first.kind + "+" + then.kind;
  return out;
}

Compressor build_onehot_binary(int n_total, const std::vector<int>& group) {
  const int k = static_cast<int>(group.size());
  if (k < 2) throw std::invalid_argument("one-hot group needs at least 2 qubits");
  if (n_total > 20)
    throw std::invalid_argument("permutation compressors capped at 20 qubits");
  const int m_loc = ceil_log2(static_cast<std::uint64_t>(k));

  // Local map over the 2^k states of the group, bit j <-> group[j].
  const std::uint64_t local_dim = std::uint64_t{1} << k;
  std::vector<std::uint64_t> local(local_dim, local_dim);
  std::vector<bool> used(local_dim, false);
  for (int j = 0; j < k; ++j) {
    std::uint64_t target = 0;
    for (int b = 0; b < m_loc; ++b)
      if ((static_cast<std::uint64_t>(j) >> b) & 1)
        target |= std::uint64_t{1} << (k - m_loc + b);
    local[std::uint64_t{1} << j] = target;
    used[target] = true;
  }
  std::uint64_t next_target = 0;
  for (std::uint64_t x = 0; x < local_dim; ++x) {
    if (local[x] != local_dim) continue;
    while (used[next_target]) ++next_target;
    local[x] = next_target;
    used[next_target] = true;
  }
  check_bijection(local);

  // Lift to the full register.
  PermTable perm;
  const std::uint64_t dim = std::uint64_t{1} << n_total;
  perm.table.resize(dim);
  std::uint64_t group_mask = 0;
  for (int q : group) group_mask |= std::uint64_t{1} << q;
  for (std::uint64_t x = 0; x < dim; ++x) {
    std::uint64_t l = 0;
    for (int j = 0; j < k; ++j)
      if ((x >> group[j]) & 1) l |= std::uint64_t{1} << j;
    std::uint64_t y = x & ~group_mask;
    std::uint64_t img = local[l];
    for (int j = 0; j < k; ++j)
      if ((img >> j) & 1) y |= std::uint64_t{1} << group[j];
    perm.table[x] = y;
  }

  Compressor c;
  c.n_qubits = n_total;
  c.zero_qubits.assign(group.begin(), group.begin() + (k - m_loc));
  std::sort(c.zero_qubits.begin(), c.zero_qubits.end());
  c.compressed_qubits = complement(n_total, c.zero_qubits);
  c.stages.push_back(std::move(perm));
  c.kind = "onehot-binary(" + std::to_string(k) + ")";

  std::vector<int> borrows = complement(n_total, group);
  try {
    c.gate_form = synthesize_permutation(local, group, borrows);
  } catch (const std::invalid_argument&) {
    // No borrowable qubit for the wide controls; permutation form only.
  }
  return c;
}

Compressor build_parity(int n_total, const std::vector<int>& group, bool odd) {
  if (group.empty()) throw std::invalid_argument("parity group is empty");
  if (n_total > 20)
    throw std::invalid_argument("permutation compressors capped at 20 qubits");
  PermTable perm;
  const std::uint64_t dim = std::uint64_t{1} << n_total;
  perm.table.resize(dim);
  const std::uint64_t first_bit = std::uint64_t{1} << group[0];
  for (std::uint64_t x = 0; x < dim; ++x) {
    int parity = 0;
    for (int q : group) parity ^= static_cast<int>((x >> q) & 1);
    if (odd) parity ^= 1;
    perm.table[x] = parity ? (x | first_bit) : (x & ~first_bit);
  }

  Circuit gates;
  for (std::size_t i = 1; i < group.size(); ++i)
    gates.gates.push_back(Cnot{group[i], group[0]});
  if (odd) gates.gates.push_back(PauliX{group[0]});

  Compressor c;
  c.n_qubits = n_total;
  c.zero_qubits = {group[0]};
  c.compressed_qubits = complement(n_total, c.zero_qubits);
  c.stages.push_back(std::move(perm));
  c.gate_form = std::move(gates);
  c.kind = odd ? "parity-odd" : "parity-even";
  return c;
}

std::vector<bool> qap_digit_parities(int n_f) {
  const int m_loc = ceil_log2(static_cast<std::uint64_t>(n_f));
  std::vector<bool> odd(m_loc);
  for (int j = 0; j < m_loc; ++j) {
    int ones = 0;
    for (int v = 0; v < n_f; ++v) ones += (v >> j) & 1;
    odd[j] = (ones % 2) == 1;
  }
  return odd;
}

Compressor build_qap_compressor(int n_f, QapEncoding encoding) {
  if (n_f < 2) throw std::invalid_argument("QAP compressor needs n_f >= 2");
  const int n_total = n_f * n_f;
  const int m_loc = ceil_log2(static_cast<std::uint64_t>(n_f));

  Compressor acc = Compressor::identity(n_total);
  for (int a = 0; a < n_f; ++a) {
    std::vector<int> group(n_f);
    for (int i = 0; i < n_f; ++i) group[i] = a * n_f + i;
    acc = compose(acc, build_onehot_binary(n_total, group));
  }
  if (encoding == QapEncoding::BinaryParity) {
    std::vector<bool> odd = qap_digit_parities(n_f);
    for (int j = 0; j < m_loc; ++j) {
      std::vector<int> digit_group(n_f);
      for (int a = 0; a < n_f; ++a)
        digit_group[a] = a * n_f + (n_f - m_loc + j);
      acc = compose(acc, build_parity(n_total, digit_group, odd[j]));
    }
    acc.kind = "qap-binary-parity(" + std::to_string(n_f) + ")";
  } else {
    acc.kind = "qap-binary(" + std::to_string(n_f) + ")";
  }
  return acc;
}

double survival_rate(const Compressor& u,
                     const std::vector<std::uint64_t>& feasible) {
  if (feasible.empty()) throw std::invalid_argument("empty feasible set");
  const std::uint64_t mask = u.zero_mask();
  double acc = 0.0;
  if (u.is_classical()) {
    for (std::uint64_t x : feasible)
      if ((u.classical_map(x, false) & mask) == 0) acc += 1.0;
  } else {
    for (std::uint64_t x : feasible) {
      Statevector s = Statevector::basis(u.n_qubits, x);
      u.apply(s, false);
      for (std::uint64_t i = 0; i < s.dim(); ++i)
        if ((i & mask) == 0) acc += std::norm(s.amps[i]);
    }
  }
  return acc / static_cast<double>(feasible.size());
}

double e_direct(const Compressor& u, const CompressedHamiltonian& h) {
  if (h.n_qubits != u.n_qubits)
    throw std::invalid_argument("Hamiltonian width mismatch");
  const std::uint64_t count = std::uint64_t{1} << u.m();
  double acc = 0.0;
  if (u.is_classical()) {
    for (std::uint64_t q = 0; q < count; ++q)
      acc += h.diag[u.classical_map(u.sector_index(q), true)];
  } else {
    for (std::uint64_t q = 0; q < count; ++q) {
      Statevector s = Statevector::basis(u.n_qubits, u.sector_index(q));
      u.apply(s, true);
      acc += expectation_diagonal(s, h.diag);
    }
  }
  return acc / static_cast<double>(count);
}

namespace {

// State of the entangled evaluation circuit: m ancillas fanned out onto the
// compressed register, then U^dag on the problem register.
Statevector entangled_state(const Compressor& u,
                            const CompressedHamiltonian& h) {
  if (h.n_qubits != u.n_qubits)
    throw std::invalid_argument("Hamiltonian width mismatch");
  const int n = u.n_qubits, m = u.m();
  Statevector s = Statevector::basis(n + m, 0);
  for (int j = 0; j < m; ++j) apply_gate(s, Hadamard{n + j});
  for (int j = 0; j < m; ++j)
    apply_gate(s, Cnot{n + j, u.compressed_qubits[j]});
  u.apply(s, true);
  return s;
}

}  // namespace

double e_entangled(const Compressor& u, const CompressedHamiltonian& h) {
  Statevector s = entangled_state(u, h);
  const std::uint64_t n_mask = (std::uint64_t{1} << u.n_qubits) - 1;
  double acc = 0.0;
  for (std::uint64_t i = 0; i < s.dim(); ++i)
    acc += h.diag[i & n_mask] * std::norm(s.amps[i]);
  return acc;
}

double e_entangled_sampled(const Compressor& u, const CompressedHamiltonian& h,
                           int shots, Rng& rng) {
  if (shots < 1) throw std::invalid_argument("shots must be positive");
  Statevector s = entangled_state(u, h);
  const std::uint64_t n_mask = (std::uint64_t{1} << u.n_qubits) - 1;
  double acc = 0.0;
  for (int i = 0; i < shots; ++i)
    acc += h.diag[sample_basis(s, rng) & n_mask];
  return acc / static_cast<double>(shots);
}

int estimate_compressed_width(const Compressor& u_partial,
                              const ConstraintSpec& next, int n_samples,
                              Rng& rng) {
  if (n_samples < 1) throw std::invalid_argument("need at least one sample");
  const int m = u_partial.m();
  int hits = 0;
  for (int i = 0; i < n_samples; ++i) {
    std::uint64_t q = rng.integer(std::uint64_t{1} << m);
    std::uint64_t x;
    if (u_partial.is_classical()) {
      x = u_partial.classical_map(u_partial.sector_index(q), true);
    } else {
      Statevector s =
          Statevector::basis(u_partial.n_qubits, u_partial.sector_index(q));
      u_partial.apply(s, true);
      x = sample_basis(s, rng);
    }
    if (next.satisfied(x)) ++hits;
  }
  double count = static_cast<double>(hits) / n_samples *
                 static_cast<double>(std::uint64_t{1} << m);
  auto rounded = static_cast<std::uint64_t>(std::max(1.0, std::round(count)));
  int est = ceil_log2(rounded);
  return std::max(1, std::min(m, est));
}

Circuit synthesize_permutation(const std::vector<std::uint64_t>& local_perm,
                               const std::vector<int>& qubits,
                               const std::vector<int>& borrows) {
  check_bijection(local_perm);
  const int k = static_cast<int>(qubits.size());
  if (local_perm.size() != (std::uint64_t{1} << k))
    throw std::invalid_argument("permutation size does not match qubit count");

  // Decompose into transpositions, applied in sequence.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> swaps;
  std::vector<std::uint64_t> remaining = local_perm;
  std::vector<bool> visited(local_perm.size(), false);
  for (std::uint64_t start = 0; start < local_perm.size(); ++start) {
    if (visited[start] || remaining[start] == start) {
      visited[start] = true;
      continue;
    }
    std::vector<std::uint64_t> cycle;
    std::uint64_t cur = start;
    while (!visited[cur]) {
      visited[cur] = true;
      cycle.push_back(cur);
      cur = remaining[cur];
    }
    // (a0 a1 ... aL-1): apply (a_{L-2} a_{L-1}) first, then down to (a0 a1).
    for (std::size_t i = cycle.size() - 1; i >= 1; --i)
      swaps.emplace_back(cycle[i - 1], cycle[i]);
  }

  Circuit c;
  for (auto [u, v] : swaps) {
    std::uint64_t w = u ^ v;
    int d = 0;
    while (!((w >> d) & 1)) ++d;
    if (!((u >> d) & 1)) std::swap(u, v);  // ensure u has the pivot bit set

    std::vector<int> ladder;
    for (int b = 0; b < k; ++b)
      if (b != d && ((w >> b) & 1)) ladder.push_back(b);

    auto emit_ladder = [&]() {
      for (int b : ladder) c.gates.push_back(Cnot{qubits[d], qubits[b]});
    };
    emit_ladder();
    // After the ladder, u maps to v ^ e_d and v is fixed; swap them with an
    // X on the pivot controlled on v's pattern everywhere else.
    std::vector<int> controls;
    std::vector<int> negated;
    for (int b = 0; b < k; ++b) {
      if (b == d) continue;
      controls.push_back(qubits[b]);
      if (!((v >> b) & 1)) negated.push_back(qubits[b]);
    }
    for (int q : negated) c.gates.push_back(PauliX{q});
    emit_mcx(c, controls, qubits[d], borrows);
    for (int q : negated) c.gates.push_back(PauliX{q});
    emit_ladder();
  }
  return c;
}

}  // namespace csqaoa
