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

#ifndef CSQAOA_NOISE_HPP_
#define CSQAOA_NOISE_HPP_

#include "csqaoa/gates.hpp"

namespace csqaoa {

// Two-qubit gate error rate of one depolarizing channel pair of strength p,
// averaged over Haar-random two-qubit states: eps = (4p/5)(2 - p).
double two_qubit_error_rate(double p);

// Inverse of the above on [0, 1): p = 1 - sqrt(1 - 5 eps / 4).
double solve_depolarizing_strength(double eps);

// One stochastic unraveling step of the depolarizing channel: applies
// exp(i xi n.sigma) on the qubit with n uniform on the sphere. Averaging
// the resulting pure-state projectors reproduces the channel with strength
// p = sin^2(xi).
void apply_noise_event(Statevector& state, int qubit, double xi, Rng& rng);

// Standard 6-CNOT Toffoli network (H, T, Tdg realized as RotZ plus a global
// phase). Used so that noise positions of three-qubit gates are explicit.
std::vector<GateOp> toffoli_network(int c1, int c2, int t);

// CSWAP as CNOT(b,a) . Toffoli(c,a,b) . CNOT(b,a), Toffoli expanded to the
// 6-CNOT network: 8 two-qubit noise positions in total.
std::vector<GateOp> cswap_network(int c, int a, int b);

// Insert a NoiseEvent on each participating qubit after every two-qubit
// gate (CNOT, RZZ, controlled-RY); CSWAP is first expanded to its 8-CNOT
// equivalent network. Single-qubit gates acquire no noise. eps = 0 returns
// the circuit unchanged. BlockXY has no gate-level compilation here and is
// rejected.
Circuit compile_to_noisy(const Circuit& circuit, double eps);

}  // namespace csqaoa

#endif  // CSQAOA_NOISE_HPP_
