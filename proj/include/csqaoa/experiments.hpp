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

#ifndef CSQAOA_EXPERIMENTS_HPP_
#define CSQAOA_EXPERIMENTS_HPP_

#include <string>
#include <vector>

#include "csqaoa/instances.hpp"
#include "csqaoa/qaoa.hpp"
#include "csqaoa/train.hpp"

namespace csqaoa {

inline constexpr const char* kVersion = "0.1.0";

struct ProblemSetup {
  CopInstance instance;
  Encoding enc;
  OracleReport oracle;
  std::uint64_t seed = 0;
  std::string label;
};

ProblemSetup setup_problem(CopInstance instance, std::uint64_t seed,
                           const std::string& label = "");

std::vector<ProblemSetup> maxkcut_suite(int n_vertices, int k, int count,
                                        std::uint64_t seed);
std::vector<ProblemSetup> qap_suite(int n_f, int count, std::uint64_t seed);

// Knapsack sub-instances derived from benchmarks (synthetic ones are drawn
// when none are supplied), keeping only instances whose feasible ratio lies
// in [0.1, 0.5].
std::vector<ProblemSetup> qkp_suite(int n_i, int count, std::uint64_t seed,
                                    const std::vector<QkpBenchmark>& benches = {});

enum class RunMode {
  XMixer,
  XYMixer,
  CsDeterministic,  // one-hot blocks (Max-k cut)
  CsBinary,         // QAP binary encoding
  CsBinaryParity,   // QAP binary-parity encoding
  CsAnsatzC,        // trained continuous ansatz
  CsAnsatzD,        // trained discrete ansatz
};

std::string mode_name(RunMode mode);
RunMode mode_from_name(const std::string& name);

struct RunSettings {
  int p = 5;
  double precision = 1.0;  // A-search bracket width
  double fixed_A = -1.0;   // >= 0 skips the A search
  int n_starts = 11;
  PowellConfig powell{};
  PowellConfig scan_powell{0.005, 30, 1e-3, 1.0};
  int scan_starts = 3;
  double noise_eps = 0.0;
  int n_trajectories = 10;
  int n_compressor_samples = 5;  // trained CS modes
  TrainBudget train_budget{};
  std::vector<CompressorRecord> compressor_db;  // reused when constraints match
  double random_start_span = 6.283185307179586;
  std::uint64_t seed = 1;
};

struct RunRow {
  std::string problem;
  std::string instance_label;
  int size = 0;
  std::string mode;
  int p = 0;
  double A = 0.0;
  double p_suc = 0.0;
  double p_dis = 0.0;
  double energy = 0.0;
  double p_sur = 1.0;  // trained modes: survival of the median sample
  std::vector<double> sample_p_suc;  // per trained compressor sample
  std::uint64_t seed = 0;
};

// Deterministic compressor for a problem/mode pair (throws for trained
// modes; those are built per sample inside run_point).
Compressor deterministic_compressor(const ProblemSetup& problem, RunMode mode);

// One (instance, mode, p) cell of the comparison protocol: tune or fix A,
// optimize, and report metrics. Trained CS modes train
// n_compressor_samples compressors and report the median success
// probability across them.
RunRow run_point(const ProblemSetup& problem, RunMode mode,
                 const RunSettings& settings);

std::vector<RunRow> run_suite(const std::vector<ProblemSetup>& problems,
                              const std::vector<RunMode>& modes,
                              const RunSettings& settings, int jobs = 1);

struct AggregateRow {
  std::string problem;
  int size = 0;
  std::string mode;
  int p = 0;
  int count = 0;
  double p_suc_mean = 0.0;
  double p_suc_std = 0.0;
  double p_dis_mean = 0.0;
};

std::vector<AggregateRow> aggregate(const std::vector<RunRow>& rows);

struct NoiseRow {
  std::string problem;
  std::string instance_label;
  std::string mode;
  int p = 0;
  double eps = 0.0;
  double A = 0.0;
  double p_suc = 0.0;
  double p_dis = 0.0;
  double p_suc_normalized = 0.0;  // p_suc / (1 - p_dis)
  int n_trajectories = 0;
};

// Optimize coherently once, then evaluate the tuned parameters under each
// error rate with trajectory averaging.
std::vector<NoiseRow> sweep_noise(const ProblemSetup& problem, RunMode mode,
                                  const RunSettings& settings,
                                  const std::vector<double>& eps_list);

struct FluctuationRow {
  std::string problem;
  std::string instance_label;
  std::string mode;
  int p = 0;
  int n_samples = 0;
  double delta_e = 0.0;
  double e_ave = 0.0;
  double ratio = 0.0;
};

FluctuationRow fluctuation_point(const ProblemSetup& problem, RunMode mode,
                                 int p, double A, int n_samples,
                                 std::uint64_t seed);

// -------- deterministic result files --------

// CSV with fixed numeric formatting; identical inputs give identical bytes.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

std::string format_number(double v);

std::vector<std::string> run_row_header();
std::vector<std::string> to_csv_row(const RunRow& row);
std::vector<std::string> aggregate_header();
std::vector<std::string> to_csv_row(const AggregateRow& row);
std::vector<std::string> noise_row_header();
std::vector<std::string> to_csv_row(const NoiseRow& row);
std::vector<std::string> fluctuation_header();
std::vector<std::string> to_csv_row(const FluctuationRow& row);

// Sidecar with the verbatim resolved config, its hash, seeds, software
// version, and wall time (the one non-deterministic field).
void write_meta(const std::string& path, const std::string& config_text,
                std::uint64_t seed, double wall_seconds,
                const std::string& notes = "");

std::uint64_t fnv1a(const std::string& text);

}  // namespace csqaoa

#endif  // CSQAOA_EXPERIMENTS_HPP_
