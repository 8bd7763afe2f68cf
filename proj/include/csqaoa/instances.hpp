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

#ifndef CSQAOA_INSTANCES_HPP_
#define CSQAOA_INSTANCES_HPP_

#include <string>
#include <vector>

#include "csqaoa/cop.hpp"
#include "csqaoa/rng.hpp"

namespace csqaoa {

// Random graph: each vertex pair connected independently with probability
// one half.
MaxKCut gen_maxkcut(int n_vertices, int k, std::uint64_t seed);

// Symmetric integer matrices, flows in {1..5} and distances in {1..10}.
Qap gen_qap(int n_f, std::uint64_t seed);

// Source benchmark for knapsack sub-instances.
struct QkpBenchmark {
  std::string name;
  int n = 0;
  double capacity = 0.0;
  std::vector<double> weights;
  std::vector<std::vector<double>> profit;  // profit[i][j - i], j >= i
};

// Plain-text format: line 1 item count, line 2 capacity, line 3 weights,
// then one upper-triangular profit row per item (p_ii .. p_in).
QkpBenchmark load_qkp(const std::string& path);
void save_qkp(const QkpBenchmark& bench, const std::string& path);

// Synthetic benchmark in the same family: profits present with the given
// density and uniform in {1..100}, weights uniform in {1..50}, capacity
// uniform in [50, sum of weights].
QkpBenchmark gen_qkp_benchmark(const std::string& name, int n, double density,
                               std::uint64_t seed);

// Sub-instance on the first n_i items with capacity floor(n_i * C / n).
Qkp derive_qkp(const QkpBenchmark& bench, int n_i);

struct OracleReport {
  std::vector<std::uint64_t> optima;  // set S
  double optimal_value = 0.0;
  std::uint64_t n_feasible = 0;
  double p_feasible = 0.0;  // |F| / 2^N
};

// Exhaustive search over all 2^N assignments (N <= 24): optimal feasible
// objective value with exact tie collection, plus the feasible count.
OracleReport brute_force(const CopInstance& instance);
std::vector<std::uint64_t> enumerate_feasible(const CopInstance& instance);

// Instance file I/O (graphs and QAP as JSON, knapsack via its text format).
std::string instance_to_json(const CopInstance& instance);
CopInstance instance_from_json(const std::string& text);
std::string oracle_to_json(const OracleReport& report);

}  // namespace csqaoa

#endif  // CSQAOA_INSTANCES_HPP_
