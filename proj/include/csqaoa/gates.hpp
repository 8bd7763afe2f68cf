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

#ifndef CSQAOA_GATES_HPP_
#define CSQAOA_GATES_HPP_

#include <cstddef>
#include <variant>
#include <vector>

#include "csqaoa/statevector.hpp"

namespace csqaoa {

// Gate set used by the whole laboratory. Rotation conventions:
//   RotY(theta)  = exp(-i theta sigma_y)
//   RotZ(theta)  = exp(-i theta sigma_z)     sigma_z = diag(-1, +1)
//   RotZZ(theta) = exp(-i theta sigma_z sigma_z)
//   RotX(beta)   = exp(-i beta sigma_x)
//   BlockXY(beta) = exp(-i beta sum_{j<k in set} (XjXk + YjYk)/2), applied
//                   exactly by dense exponentiation within the block.
//   NoiseEvent(xi) = exp(i xi n.sigma) with n drawn uniformly on the unit
//                    sphere; the only gate that consumes randomness.
struct PauliX { int q; };
struct Hadamard { int q; };
struct RotY { int q; double theta; };
struct ControlledRotY { int c; int q; double theta; };
struct Cnot { int c; int t; };
struct Cswap { int c; int a; int b; };
struct RotZ { int q; double theta; };
struct RotZZ { int q1; int q2; double theta; };
struct RotX { int q; double beta; };
struct BlockXY { std::vector<int> qubits; double beta; };
struct GlobalPhase { double theta; };  // multiplies every amplitude by e^{i theta}
struct NoiseEvent { int q; double xi; };

using GateOp = std::variant<PauliX, Hadamard, RotY, ControlledRotY, Cnot,
                            Cswap, RotZ, RotZZ, RotX, BlockXY, GlobalPhase,
                            NoiseEvent>;

// Ordered gate list. layer_marks are gate positions at which one circuit
// layer ends; the engine performs its mid-circuit projections there. Marks
// are strictly increasing and at most gates.size().
struct Circuit {
  std::vector<GateOp> gates;
  std::vector<std::size_t> layer_marks;

  void append(const Circuit& other);
  void validate(int n_qubits) const;
};

// Qubits a gate touches, in declaration order.
std::vector<int> gate_qubits(const GateOp& gate);

// True for gates that permute basis states (X, CNOT, CSWAP).
bool is_classical_gate(const GateOp& gate);

// Inverse of a single gate. NoiseEvent is not invertible.
GateOp inverse_gate(const GateOp& gate);

// Reversed circuit with every gate inverted. layer_marks are dropped.
Circuit inverse_circuit(const Circuit& circuit);

// Apply one gate in place. NoiseEvent requires an rng.
void apply_gate(Statevector& state, const GateOp& gate, Rng* rng = nullptr);

// Apply all gates in order. Deterministic given the rng seed.
void apply_circuit(Statevector& state, const Circuit& circuit,
                   Rng* rng = nullptr);

// Basis-state image under a classical gate / circuit.
std::uint64_t classical_image(std::uint64_t x, const GateOp& gate);
std::uint64_t classical_image(std::uint64_t x, const Circuit& circuit);

// Multiply every amplitude x by exp(-i gamma * diag[x]).
void apply_diagonal_phase(Statevector& state, const std::vector<double>& diag,
                          double gamma);

}  // namespace csqaoa

#endif  // CSQAOA_GATES_HPP_
