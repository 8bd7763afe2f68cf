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

#ifndef CSQAOA_QAOA_HPP_
#define CSQAOA_QAOA_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "csqaoa/compressor.hpp"
#include "csqaoa/powell.hpp"
#include "csqaoa/qubo.hpp"

namespace csqaoa {

enum class MixerMode { X, XY, CS };

struct QaoaConfig {
  int p = 1;
  MixerMode mode = MixerMode::X;
  IsingModel ising;
  std::optional<Compressor> compressor;       // CS mode
  std::vector<std::vector<int>> xy_blocks;    // W-state / XY-mixer groups
  bool global_xy = false;                     // sensitivity flag: one global block
  double noise_eps = 0.0;                     // two-qubit gate error rate
  int n_trajectories = 10;
  bool optimize_under_noise = false;  // default: optimize coherently,
                                      // evaluate under noise
  int n_starts = 11;                  // one zero start plus random starts
  double random_start_span = 6.283185307179586;  // [0, 2pi); 4pi optional
  std::uint64_t seed = 1;
};

struct BuildOutcome {
  Statevector state;               // kept, renormalized
  std::vector<double> layer_keep;  // 1 - p_dis^(i) per CS layer
  bool fully_discarded = false;
};

struct QaoaMetrics {
  double energy = 0.0;
  double p_suc = 0.0;
  double p_dis = 0.0;
  std::vector<double> layer_discards;
  bool fully_discarded = false;
};

struct QaoaResult {
  std::vector<double> beta;
  std::vector<double> gamma;
  double energy = 0.0;
  double p_suc = 0.0;
  double p_dis = 0.0;
  std::vector<double> layer_discards;
  std::vector<std::pair<double, long>> start_trace;  // (energy, evals)
  long evaluations = 0;
  std::uint64_t seed = 0;
};

// Eq.-level success probability: prod(keep) * sum_{x in optima} |<x|psi>|^2.
double success_probability(const Statevector& state,
                           const std::vector<std::uint64_t>& optima,
                           const std::vector<double>& layer_keep);

class QaoaEngine {
 public:
  explicit QaoaEngine(QaoaConfig config);

  const QaoaConfig& config() const { return cfg_; }
  const std::vector<double>& diagonal() const { return diag_; }

  Statevector prepare_initial() const;

  // Coherent variational state: alternating phase and mixer layers; in CS
  // mode the full decode / phase / encode / project / mix cycle per layer.
  BuildOutcome build_state(const std::vector<double>& beta,
                           const std::vector<double>& gamma) const;

  // Explicit gate-level circuit (phase operator compiled to RZZ/RZ gates),
  // with layer marks at the CS mid-circuit measurement points.
  Circuit gate_circuit(const std::vector<double>& beta,
                       const std::vector<double>& gamma) const;

  // One stochastic noise trajectory through the compiled circuit.
  BuildOutcome run_trajectory(const std::vector<double>& beta,
                              const std::vector<double>& gamma,
                              Rng& rng) const;

  // Coherent or trajectory-averaged metrics at the given parameters.
  QaoaMetrics evaluate(const std::vector<double>& beta,
                       const std::vector<double>& gamma,
                       const std::vector<std::uint64_t>& optima) const;

  // Optimizer objective: energy of the kept state.
  double objective(const std::vector<double>& params) const;

 private:
  QaoaConfig cfg_;
  std::vector<double> diag_;
};

// Full outer loop: one all-zero start plus random starts, Powell on each,
// metrics evaluated at the best converged parameters.
QaoaResult optimize_qaoa(const QaoaConfig& config,
                         const std::vector<std::uint64_t>& optima,
                         const PowellConfig& powell);

struct TuneResult {
  double A = 0.0;
  QaoaResult result;
  std::vector<std::pair<double, double>> scan;  // (A, p_suc) in scan order
};

// Coarse-to-fine search for the constraint coefficient maximizing p_suc,
// terminating when the bracket width reaches `precision`; ties go to the
// smaller A. The scan runs with `scan_starts` starts and `scan_powell`;
// the returned result is re-optimized at full budget.
TuneResult tune_penalty(const Qubo& objective, const Qubo& constraint,
                        const QaoaConfig& proto,
                        const std::vector<std::uint64_t>& optima,
                        double precision, const PowellConfig& scan_powell,
                        int scan_starts, const PowellConfig& final_powell);

struct Fluctuation {
  double delta_e = 0.0;
  double e_ave = 0.0;
  double ratio = 0.0;
  bool defined = true;  // false when e_ave vanishes
};

// Std and mean of <H> over uniformly random (beta, gamma) in [0, 2pi),
// coherent circuit.
Fluctuation energy_fluctuation(const QaoaConfig& config, int n_samples,
                               Rng& rng);

}  // namespace csqaoa

#endif  // CSQAOA_QAOA_HPP_
