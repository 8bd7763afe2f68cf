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

#include "csqaoa/gates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace csqaoa {

namespace {

constexpr complex_t kI{0.0, 1.0};

void check_qubit(int q, int n) {
  if (q < 0 || q >= n) throw std::out_of_range("gate qubit index out of range");
}

void check_distinct(const std::vector<int>& qs) {
  for (std::size_t i = 0; i < qs.size(); ++i)
    for (std::size_t j = i + 1; j < qs.size(); ++j)
      if (qs[i] == qs[j])
        throw std::invalid_argument("gate qubit indices must be distinct");
}

// In-place 2x2 update on the target qubit: (a0, a1) -> (u00 a0 + u01 a1,
// u10 a0 + u11 a1), optionally restricted to basis states where the control
// bit is set.
void apply_one_qubit(Statevector& state, int q, complex_t u00, complex_t u01,
                     complex_t u10, complex_t u11, int control = -1) {
  const std::uint64_t bit = std::uint64_t{1} << q;
  const std::uint64_t cbit =
      control >= 0 ? (std::uint64_t{1} << control) : std::uint64_t{0};
  const std::size_t dim = state.dim();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & bit) continue;
    if (cbit && !(i & cbit)) continue;
    complex_t a0 = state.amps[i];
    complex_t a1 = state.amps[i | bit];
    state.amps[i] = u00 * a0 + u01 * a1;
    state.amps[i | bit] = u10 * a0 + u11 * a1;
  }
}

// Dense exponential exp(-i beta H) of the XY hopping Hamiltonian on a block
// of b qubits, via scaling-and-squaring Taylor on the 2^b x 2^b matrix.
// Blocks are small (<= 6 qubits) everywhere in this project.
std::vector<complex_t> block_xy_matrix(int b, double beta) {
  const std::size_t d = std::size_t{1} << b;
  std::vector<double> h(d * d, 0.0);
  for (std::uint64_t x = 0; x < d; ++x) {
    for (int j = 0; j < b; ++j) {
      for (int k = j + 1; k < b; ++k) {
        bool bj = (x >> j) & 1, bk = (x >> k) & 1;
        if (bj == bk) continue;
        // (XX + YY)/2 hops |..01..> <-> |..10..> with amplitude 1.
        std::uint64_t y = x ^ (std::uint64_t{1} << j) ^ (std::uint64_t{1} << k);
        h[x * d + y] += 1.0;
      }
    }
  }
  double hmax = 0.0;
  for (double v : h) hmax = std::max(hmax, std::abs(v));
  double scale = std::abs(beta) * hmax * static_cast<double>(d);
  int squarings = 0;
  while (scale > 0.25 && squarings < 60) {
    scale *= 0.5;
    ++squarings;
  }
  const double t = -beta / static_cast<double>(std::uint64_t{1} << squarings);

  std::vector<complex_t> result(d * d, 0.0), term(d * d, 0.0), next(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    result[i * d + i] = 1.0;
    term[i * d + i] = 1.0;
  }
  for (int order = 1; order <= 24; ++order) {
    // term <- term * (i t H) / order
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) {
        complex_t acc = 0.0;
        for (std::size_t k = 0; k < d; ++k)
          if (h[k * d + c] != 0.0) acc += term[r * d + k] * h[k * d + c];
        next[r * d + c] = acc * kI * t / static_cast<double>(order);
      }
    }
    term.swap(next);
    for (std::size_t i = 0; i < d * d; ++i) result[i] += term[i];
  }
  for (int s = 0; s < squarings; ++s) {
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) {
        complex_t acc = 0.0;
        for (std::size_t k = 0; k < d; ++k)
          acc += result[r * d + k] * result[k * d + c];
        next[r * d + c] = acc;
      }
    result.swap(next);
  }
  return result;
}

void apply_block_xy(Statevector& state, const BlockXY& g) {
  const int b = static_cast<int>(g.qubits.size());
  if (b == 0) return;
  const std::size_t d = std::size_t{1} << b;
  const auto u = block_xy_matrix(b, g.beta);

  std::uint64_t block_mask = 0;
  for (int q : g.qubits) block_mask |= std::uint64_t{1} << q;

  std::vector<complex_t> in(d), out(d);
  const std::size_t dim = state.dim();
  for (std::uint64_t base = 0; base < dim; ++base) {
    if (base & block_mask) continue;  // enumerate block = 0 representatives
    for (std::uint64_t s = 0; s < d; ++s) {
      std::uint64_t idx = base;
      for (int j = 0; j < b; ++j)
        if ((s >> j) & 1) idx |= std::uint64_t{1} << g.qubits[j];
      in[s] = state.amps[idx];
    }
    for (std::uint64_t r = 0; r < d; ++r) {
      complex_t acc = 0.0;
      for (std::uint64_t c = 0; c < d; ++c) acc += u[r * d + c] * in[c];
      out[r] = acc;
    }
    for (std::uint64_t s = 0; s < d; ++s) {
      std::uint64_t idx = base;
      for (int j = 0; j < b; ++j)
        if ((s >> j) & 1) idx |= std::uint64_t{1} << g.qubits[j];
      state.amps[idx] = out[s];
    }
  }
}

}  // namespace

std::vector<int> gate_qubits(const GateOp& gate) {
  return std::visit(
      [](const auto& g) -> std::vector<int> {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, PauliX>) return {g.q};
        else if constexpr (std::is_same_v<T, Hadamard>) return {g.q};
        else if constexpr (std::is_same_v<T, RotY>) return {g.q};
        else if constexpr (std::is_same_v<T, ControlledRotY>) return {g.c, g.q};
        else if constexpr (std::is_same_v<T, Cnot>) return {g.c, g.t};
        else if constexpr (std::is_same_v<T, Cswap>) return {g.c, g.a, g.b};
        else if constexpr (std::is_same_v<T, RotZ>) return {g.q};
        else if constexpr (std::is_same_v<T, RotZZ>) return {g.q1, g.q2};
        else if constexpr (std::is_same_v<T, RotX>) return {g.q};
        else if constexpr (std::is_same_v<T, BlockXY>) return g.qubits;
        else if constexpr (std::is_same_v<T, GlobalPhase>) return {};
        else return {g.q};  // NoiseEvent
      },
      gate);
}

bool is_classical_gate(const GateOp& gate) {
  return std::holds_alternative<PauliX>(gate) ||
         std::holds_alternative<Cnot>(gate) ||
         std::holds_alternative<Cswap>(gate);
}

GateOp inverse_gate(const GateOp& gate) {
  return std::visit(
      [](const auto& g) -> GateOp {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, RotY>) return RotY{g.q, -g.theta};
        else if constexpr (std::is_same_v<T, ControlledRotY>)
          return ControlledRotY{g.c, g.q, -g.theta};
        else if constexpr (std::is_same_v<T, RotZ>) return RotZ{g.q, -g.theta};
        else if constexpr (std::is_same_v<T, RotZZ>)
          return RotZZ{g.q1, g.q2, -g.theta};
        else if constexpr (std::is_same_v<T, RotX>) return RotX{g.q, -g.beta};
        else if constexpr (std::is_same_v<T, BlockXY>)
          return BlockXY{g.qubits, -g.beta};
        else if constexpr (std::is_same_v<T, GlobalPhase>)
          return GlobalPhase{-g.theta};
        else if constexpr (std::is_same_v<T, NoiseEvent>)
          throw std::invalid_argument("NoiseEvent has no inverse");
        else
          return g;  // X, H, CNOT, CSWAP are involutions
      },
      gate);
}

Circuit inverse_circuit(const Circuit& circuit) {
  Circuit inv;
  inv.gates.reserve(circuit.gates.size());
  for (auto it = circuit.gates.rbegin(); it != circuit.gates.rend(); ++it)
    inv.gates.push_back(inverse_gate(*it));
  return inv;
}

void Circuit::append(const Circuit& other) {
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
}

void Circuit::validate(int n_qubits) const {
  for (const auto& g : gates) {
    auto qs = gate_qubits(g);
    for (int q : qs) check_qubit(q, n_qubits);
    check_distinct(qs);
  }
  std::size_t prev = 0;
  bool first = true;
  for (std::size_t m : layer_marks) {
    if (!first && m <= prev)
      throw std::invalid_argument("layer marks must be strictly increasing");
    if (m > gates.size())
      throw std::invalid_argument("layer mark beyond end of circuit");
    prev = m;
    first = false;
  }
}

void apply_gate(Statevector& state, const GateOp& gate, Rng* rng) {
  const int n = state.n_qubits;
  auto qs = gate_qubits(gate);
  for (int q : qs) check_qubit(q, n);
  check_distinct(qs);

  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, PauliX>) {
          apply_one_qubit(state, g.q, 0.0, 1.0, 1.0, 0.0);
        } else if constexpr (std::is_same_v<T, Hadamard>) {
          const double s = 1.0 / std::sqrt(2.0);
          apply_one_qubit(state, g.q, s, s, s, -s);
        } else if constexpr (std::is_same_v<T, RotY>) {
          double c = std::cos(g.theta), s = std::sin(g.theta);
          apply_one_qubit(state, g.q, c, -s, s, c);
        } else if constexpr (std::is_same_v<T, ControlledRotY>) {
          double c = std::cos(g.theta), s = std::sin(g.theta);
          apply_one_qubit(state, g.q, c, -s, s, c, g.c);
        } else if constexpr (std::is_same_v<T, Cnot>) {
          apply_one_qubit(state, g.t, 0.0, 1.0, 1.0, 0.0, g.c);
        } else if constexpr (std::is_same_v<T, Cswap>) {
          const std::uint64_t cbit = std::uint64_t{1} << g.c;
          const std::uint64_t abit = std::uint64_t{1} << g.a;
          const std::uint64_t bbit = std::uint64_t{1} << g.b;
          for (std::uint64_t i = 0; i < state.dim(); ++i) {
            if (!(i & cbit)) continue;
            if ((i & abit) && !(i & bbit))
              std::swap(state.amps[i], state.amps[(i ^ abit) | bbit]);
          }
        } else if constexpr (std::is_same_v<T, RotZ>) {
          // sigma_z = diag(-1, +1): |0> picks up e^{+i theta}.
          complex_t p0 = std::exp(kI * g.theta), p1 = std::exp(-kI * g.theta);
          apply_one_qubit(state, g.q, p0, 0.0, 0.0, p1);
        } else if constexpr (std::is_same_v<T, RotZZ>) {
          const std::uint64_t b1 = std::uint64_t{1} << g.q1;
          const std::uint64_t b2 = std::uint64_t{1} << g.q2;
          complex_t even = std::exp(-kI * g.theta);  // s1 s2 = +1
          complex_t odd = std::exp(kI * g.theta);
          for (std::uint64_t i = 0; i < state.dim(); ++i) {
            bool differ = static_cast<bool>(i & b1) != static_cast<bool>(i & b2);
            state.amps[i] *= differ ? odd : even;
          }
        } else if constexpr (std::is_same_v<T, RotX>) {
          complex_t c = std::cos(g.beta);
          complex_t ms = -kI * std::sin(g.beta);
          apply_one_qubit(state, g.q, c, ms, ms, c);
        } else if constexpr (std::is_same_v<T, BlockXY>) {
          apply_block_xy(state, g);
        } else if constexpr (std::is_same_v<T, GlobalPhase>) {
          complex_t p = std::exp(kI * g.theta);
          for (auto& a : state.amps) a *= p;
        } else {  // NoiseEvent
          if (rng == nullptr)
            throw std::invalid_argument("NoiseEvent requires an rng");
          auto n3 = rng->unit_vector();
          if (g.xi == 0.0) return;
          double c = std::cos(g.xi), s = std::sin(g.xi);
          // exp(i xi n.sigma) with sigma_z = diag(-1, +1).
          complex_t u00 = c - kI * s * n3[2];
          complex_t u11 = c + kI * s * n3[2];
          complex_t u01 = kI * s * n3[0] + s * n3[1];
          complex_t u10 = kI * s * n3[0] - s * n3[1];
          apply_one_qubit(state, g.q, u00, u01, u10, u11);
        }
      },
      gate);
}

void apply_circuit(Statevector& state, const Circuit& circuit, Rng* rng) {
  for (const auto& g : circuit.gates) apply_gate(state, g, rng);
}

std::uint64_t classical_image(std::uint64_t x, const GateOp& gate) {
  if (const auto* g = std::get_if<PauliX>(&gate)) {
    return x ^ (std::uint64_t{1} << g->q);
  }
  if (const auto* g = std::get_if<Cnot>(&gate)) {
    if ((x >> g->c) & 1) return x ^ (std::uint64_t{1} << g->t);
    return x;
  }
  if (const auto* g = std::get_if<Cswap>(&gate)) {
    if (!((x >> g->c) & 1)) return x;
    bool ba = (x >> g->a) & 1, bb = (x >> g->b) & 1;
    if (ba == bb) return x;
    return x ^ (std::uint64_t{1} << g->a) ^ (std::uint64_t{1} << g->b);
  }
  throw std::invalid_argument("gate is not classical");
}

std::uint64_t classical_image(std::uint64_t x, const Circuit& circuit) {
  for (const auto& g : circuit.gates) x = classical_image(x, g);
  return x;
}

void apply_diagonal_phase(Statevector& state, const std::vector<double>& diag,
                          double gamma) {
  if (diag.size() != state.dim())
    throw std::invalid_argument("diagonal length mismatch");
  for (std::size_t i = 0; i < state.dim(); ++i)
    state.amps[i] *= std::exp(kI * (-gamma * diag[i]));
}

}  // namespace csqaoa
