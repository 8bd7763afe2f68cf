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

#ifndef CSQAOA_ANNEAL_HPP_
#define CSQAOA_ANNEAL_HPP_

#include <functional>
#include <vector>

#include "csqaoa/rng.hpp"

namespace csqaoa {

struct SaConfig {
  int n_loop = 1000;  // outer loops; inner loop count equals n_bits
  double t_initial = 10.0;
  double t_final = 0.1;  // geometric schedule from t_initial to t_final
};

struct SaResult {
  std::vector<bool> bits;
  double f = 0.0;
  long evaluations = 0;
};

using BitObjectiveFn = std::function<double(const std::vector<bool>&)>;

// Single-bit-flip Metropolis annealing over bitstrings; returns the best
// configuration seen. Deterministic given the rng seed.
SaResult anneal_binary(const BitObjectiveFn& f, int n_bits,
                       const SaConfig& config, Rng& rng);

}  // namespace csqaoa

#endif  // CSQAOA_ANNEAL_HPP_
