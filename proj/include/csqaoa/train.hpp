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

#ifndef CSQAOA_TRAIN_HPP_
#define CSQAOA_TRAIN_HPP_

#include <string>
#include <vector>

#include "csqaoa/anneal.hpp"
#include "csqaoa/compressor.hpp"
#include "csqaoa/powell.hpp"

namespace csqaoa {

// Discrete ansatz: one bit per gate slot. Slot order per layer is all
// CSWAP(i1; i2 < i3) triples with i1 outermost, then all ordered CNOT
// pairs, then single X gates; N - m leading X slots precede the layers.
struct DParams {
  int n_qubits = 0;
  int m = 0;
  int layers = 1;
  std::vector<bool> bits;
};

// Continuous ansatz: Y-rotations on the N - m zero-register qubits, then
// per layer a controlled-Y rotation for every ordered qubit pair followed
// by a full rotation column; the continuous mirror of the discrete slots.
struct CParams {
  int n_qubits = 0;
  int m = 0;
  int layers = 1;
  std::vector<double> theta;
};

std::size_t d_ansatz_param_count(int n_qubits, int m, int layers);
std::size_t c_ansatz_param_count(int n_qubits, int m, int layers);

// Both decoders produce the adjoint U_cs^dag (the decoder from compressed
// inputs to original basis states), matching how the circuits act on
// |0^{N-m}>|phi>.
Circuit decode_d_ansatz(const DParams& params);
Circuit decode_c_ansatz(const CParams& params);

// Wrap decoded parameters as a Compressor (zero register = low qubits).
Compressor compressor_from_d(const DParams& params);
Compressor compressor_from_c(const CParams& params);

struct TrainResult {
  Compressor compressor;
  double p_sur = 0.0;
  double energy = 0.0;
  long evaluations = 0;
  std::vector<double> theta;  // C-ansatz
  std::vector<bool> bits;     // D-ansatz
  int layers = 1;
  int n_rep = 0;    // C budget actually used
  SaConfig sa;      // D budget actually used
  bool met_threshold = false;
};

// Minimize E(U(theta), H) by Powell from n_rep random starts in [0, pi).
TrainResult train_c_ansatz(const CompressedHamiltonian& h,
                           const std::vector<std::uint64_t>& feasible, int m,
                           int layers, int n_rep, const PowellConfig& powell,
                           Rng& rng);

// Minimize E(U(bits), H) by single-bit-flip Metropolis annealing.
TrainResult train_d_ansatz(const CompressedHamiltonian& h,
                           const std::vector<std::uint64_t>& feasible, int m,
                           int layers, const SaConfig& sa, Rng& rng);

enum class AnsatzKind { C, D };

struct TrainBudget {
  int layers = 1;
  int n_rep = 10;                // C-ansatz restarts
  SaConfig sa{1000, 10.0, 0.1};  // D-ansatz schedule
  PowellConfig powell{};
  int doublings = 3;  // budget doublings before adding a layer
};

// Survival thresholds: >= 0.98 for the C-ansatz, exactly 1 for the D-ansatz.
double survival_threshold(AnsatzKind kind);

// Retry loop: doubles n_rep (C) or n_loop (D) up to `doublings` times, then
// adds one layer with the original budget. The best attempt is returned
// with met_threshold set accordingly.
TrainResult train_with_escalation(AnsatzKind kind,
                                  const CompressedHamiltonian& h,
                                  const std::vector<std::uint64_t>& feasible,
                                  int m, const TrainBudget& budget, Rng& rng);

// -------- multiple constraints (sequential composition) --------

enum class CompressionStrategy { Deterministic, AnsatzC, AnsatzD };

struct CompressionPlan {
  ConstraintSpec constraint;
  CompressionStrategy strategy = CompressionStrategy::Deterministic;
  bool parity_odd = false;  // for deterministic parity constraints
  int m_next = -1;          // trained stages: target width; -1 = exact count
  TrainBudget budget;
};

struct ComposeError : std::runtime_error {
  int stage;
  explicit ComposeError(int stage_index, const std::string& what)
      : std::runtime_error(what), stage(stage_index) {}
};

// Sequential engineering of U_cs for several constraints: starts from the
// identity, shrinks the compressed width per constraint, and composes
// U' U^(k) where U' is deterministic or trained against the constraint's
// compressed-space Hamiltonian with U^(k) frozen.
Compressor compose_constraints(int n_total,
                               const std::vector<CompressionPlan>& plans,
                               Rng& rng);

// -------- persistent records (constraint-specific database) --------

struct CompressorRecord {
  std::string constraint_kind;
  std::vector<int> variables;
  std::vector<double> coeffs;
  double lower = 0.0, upper = 0.0;
  int n_qubits = 0, m = 0, layers = 1;
  std::string ansatz;  // "C" or "D"
  std::vector<double> params;
  std::vector<std::uint64_t> label;  // D-ansatz decode map, empty for C
  double p_sur = 0.0;
  double fs_ratio_original = 0.0;
  double fs_ratio_compressed = 0.0;
  long n_loop = 0;  // budget actually used (n_rep for C)
  double t_initial = 0.0, t_final = 0.0;
  std::uint64_t seed = 0;
  bool failed = false;
};

CompressorRecord make_record(const ConstraintSpec& spec,
                             const TrainResult& result, AnsatzKind kind,
                             int n_total,
                             const std::vector<std::uint64_t>& feasible,
                             std::uint64_t seed);

Compressor compressor_from_record(const CompressorRecord& record);

// Successful records whose constraint and register width match exactly;
// the reuse path of the constraint-specific database.
std::vector<CompressorRecord> matching_records(
    const std::vector<CompressorRecord>& db, const ConstraintSpec& spec,
    int n_total);

std::string records_to_json(const std::vector<CompressorRecord>& records);
std::vector<CompressorRecord> records_from_json(const std::string& text);

}  // namespace csqaoa

#endif  // CSQAOA_TRAIN_HPP_
