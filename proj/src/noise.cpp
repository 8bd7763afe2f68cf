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

#include "csqaoa/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace csqaoa {

namespace {

constexpr double kPi = 3.14159265358979323846;

// T = diag(1, e^{i pi/4}) = e^{i pi/8} RotZ(-pi/8) under sigma_z = diag(-1, 1).
void push_t(std::vector<GateOp>& gates, int q) {
  gates.push_back(GlobalPhase{kPi / 8.0});
  gates.push_back(RotZ{q, -kPi / 8.0});
}

void push_tdg(std::vector<GateOp>& gates, int q) {
  gates.push_back(GlobalPhase{-kPi / 8.0});
  gates.push_back(RotZ{q, kPi / 8.0});
}

}  // namespace

double two_qubit_error_rate(double p) { return 0.8 * p * (2.0 - p); }

double solve_depolarizing_strength(double eps) {
  if (eps < 0.0 || eps >= 0.8)
    throw std::invalid_argument("two-qubit error rate must be in [0, 4/5)");
  return 1.0 - std::sqrt(1.0 - 1.25 * eps);
}

void apply_noise_event(Statevector& state, int qubit, double xi, Rng& rng) {
  if (xi < 0.0 || xi > kPi / 2.0)
    throw std::invalid_argument("noise angle must be in [0, pi/2]");
  apply_gate(state, NoiseEvent{qubit, xi}, &rng);
}

std::vector<GateOp> toffoli_network(int c1, int c2, int t) {
  std::vector<GateOp> g;
  g.push_back(Hadamard{t});
  g.push_back(Cnot{c2, t});
  push_tdg(g, t);
  g.push_back(Cnot{c1, t});
  push_t(g, t);
  g.push_back(Cnot{c2, t});
  push_tdg(g, t);
  g.push_back(Cnot{c1, t});
  push_t(g, c2);
  push_t(g, t);
  g.push_back(Hadamard{t});
  g.push_back(Cnot{c1, c2});
  push_t(g, c1);
  push_tdg(g, c2);
  g.push_back(Cnot{c1, c2});
  return g;
}

std::vector<GateOp> cswap_network(int c, int a, int b) {
  std::vector<GateOp> g;
  g.push_back(Cnot{b, a});
  auto toff = toffoli_network(c, a, b);
  g.insert(g.end(), toff.begin(), toff.end());
  g.push_back(Cnot{b, a});
  return g;
}

Circuit compile_to_noisy(const Circuit& circuit, double eps) {
  if (eps < 0.0 || eps >= 0.8)
    throw std::invalid_argument("two-qubit error rate must be in [0, 4/5)");
  if (eps == 0.0) return circuit;

  const double p = solve_depolarizing_strength(eps);
  const double xi = std::asin(std::sqrt(p));

  Circuit out;
  auto mark_it = circuit.layer_marks.begin();
  auto emit_pair_noise = [&](int q1, int q2) {
    out.gates.push_back(NoiseEvent{q1, xi});
    out.gates.push_back(NoiseEvent{q2, xi});
  };
  auto emit = [&](const GateOp& g) {
    out.gates.push_back(g);
    if (const auto* cx = std::get_if<Cnot>(&g)) emit_pair_noise(cx->c, cx->t);
    else if (const auto* zz = std::get_if<RotZZ>(&g)) emit_pair_noise(zz->q1, zz->q2);
    else if (const auto* cry = std::get_if<ControlledRotY>(&g)) emit_pair_noise(cry->c, cry->q);
  };

  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    while (mark_it != circuit.layer_marks.end() && *mark_it == i) {
      out.layer_marks.push_back(out.gates.size());
      ++mark_it;
    }
    const GateOp& g = circuit.gates[i];
    if (const auto* cs = std::get_if<Cswap>(&g)) {
      for (const auto& sub : cswap_network(cs->c, cs->a, cs->b)) emit(sub);
    } else if (std::holds_alternative<BlockXY>(g)) {
      throw std::invalid_argument(
          "BlockXY has no noisy gate compilation; use an X-mixer or CS run");
    } else {
      emit(g);
    }
  }
  while (mark_it != circuit.layer_marks.end()) {
    out.layer_marks.push_back(out.gates.size());
    ++mark_it;
  }
  return out;
}

}  // namespace csqaoa
