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

#ifndef CSQAOA_COMPRESSOR_HPP_
#define CSQAOA_COMPRESSOR_HPP_

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "csqaoa/gates.hpp"
#include "csqaoa/hcs.hpp"

namespace csqaoa {

// Basis permutation: table[x] is the image of basis state x under U_cs.
struct PermTable {
  std::vector<std::uint64_t> table;
};

using CompressorStage = std::variant<PermTable, Circuit>;

// Compression unitary U_cs: maps every feasible basis state into the sector
// where all zero_qubits are |0>. The compressed register is the complement;
// bit j of a compressed-space index corresponds to compressed_qubits[j].
struct Compressor {
  int n_qubits = 0;
  std::vector<int> zero_qubits;        // sorted, size n_qubits - m
  std::vector<int> compressed_qubits;  // sorted, size m
  std::vector<CompressorStage> stages;  // U_cs = stages.back() ... stages[0]
  std::optional<Circuit> gate_form;     // full gate realization of U_cs
  std::string kind;

  int m() const { return static_cast<int>(compressed_qubits.size()); }
  std::uint64_t zero_mask() const;

  // Basis index with the bits of `compressed` placed on the compressed
  // register and zeros elsewhere.
  std::uint64_t sector_index(std::uint64_t compressed) const;

  // Apply U_cs (or its adjoint) in place. The state may be wider than
  // n_qubits; the extra high qubits are untouched.
  void apply(Statevector& state, bool dagger) const;

  bool is_classical() const;  // every stage permutes basis states
  std::uint64_t classical_map(std::uint64_t x, bool dagger) const;

  // Gate realization for noise compilation; throws when none is available.
  Circuit noisy_gates(bool dagger) const;

  static Compressor identity(int n_qubits);
};

// Composition: U_then * U_first (first applied first).
Compressor compose(const Compressor& first, const Compressor& then);

// Deterministic one-hot -> binary compressor on the listed group. The first
// |V| - ceil(log2 |V|) listed qubits leave the compressed space; the one-hot
// state with the 1 at listed position j (1-based) maps to the binary code of
// j - 1 on the remaining qubits, least-significant bit first. The map is
// completed to a full bijection by lexicographic greedy assignment. A gate
// form is attached when it can be synthesized from the available qubits.
Compressor build_onehot_binary(int n_total, const std::vector<int>& group);

// Deterministic parity compressor: a CNOT ladder accumulates the group
// parity onto the first listed qubit (plus an X for odd parity), which
// leaves the compressed space.
Compressor build_parity(int n_total, const std::vector<int>& group, bool odd);

enum class QapEncoding { Binary, BinaryParity };

// Per-location one-hot compressors, optionally followed by per-digit parity
// compressors whose even/odd choice is fixed by n_f.
Compressor build_qap_compressor(int n_f, QapEncoding encoding);

// Per-digit parity flags (true = odd) of the assignment-digit sums, i.e.
// the parity of sum_{v < n_f} bit_j(v) for each binary digit j.
std::vector<bool> qap_digit_parities(int n_f);

// Mean feasible-state mass landing in the compressed sector.
double survival_rate(const Compressor& u,
                     const std::vector<std::uint64_t>& feasible);

// Compression objective E(U, H) = 2^-m sum_q <0q| U H U^dag |0q>.
double e_direct(const Compressor& u, const CompressedHamiltonian& h);

// Same quantity from the (N+m)-qubit entangled evaluation circuit, either
// exactly from the marginal distribution or from a finite shot count.
double e_entangled(const Compressor& u, const CompressedHamiltonian& h);
double e_entangled_sampled(const Compressor& u, const CompressedHamiltonian& h,
                           int shots, Rng& rng);

// Monte-Carlo estimate of the width needed once `next` is imposed on top of
// the space compressed by u_partial: ceil(log2 of the estimated feasible
// count), clamped to [1, current m].
int estimate_compressed_width(const Compressor& u_partial,
                              const ConstraintSpec& next, int n_samples,
                              Rng& rng);

// Gate synthesis for an arbitrary permutation of the basis states of
// `qubits`, as transpositions realized by CNOT conjugation plus a
// multi-controlled X (expanded down to the CNOT/T level). Controls beyond
// two require one borrowable qubit from `borrows`.
Circuit synthesize_permutation(const std::vector<std::uint64_t>& local_perm,
                               const std::vector<int>& qubits,
                               const std::vector<int>& borrows);

}  // namespace csqaoa

#endif  // CSQAOA_COMPRESSOR_HPP_
