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

#include "csqaoa/anneal.hpp"

#include <cmath>
#include <stdexcept>

namespace csqaoa {

SaResult anneal_binary(const BitObjectiveFn& f, int n_bits,
                       const SaConfig& config, Rng& rng) {
  if (n_bits < 1) throw std::invalid_argument("need at least one bit");
  if (config.n_loop < 1) throw std::invalid_argument("n_loop must be >= 1");
  if (!(config.t_initial >= config.t_final && config.t_final > 0.0))
    throw std::invalid_argument("temperatures must satisfy T_i >= T_f > 0");

  std::vector<bool> bits(n_bits);
  for (int i = 0; i < n_bits; ++i) bits[i] = rng.bernoulli(0.5);

  SaResult res;
  double cur = f(bits);
  res.evaluations = 1;
  res.bits = bits;
  res.f = cur;

  const double ratio = config.t_final / config.t_initial;
  for (int loop = 0; loop < config.n_loop; ++loop) {
    double frac = config.n_loop > 1
                      ? static_cast<double>(loop) / (config.n_loop - 1)
                      : 0.0;
    double temp = config.t_initial * std::pow(ratio, frac);
    for (int inner = 0; inner < n_bits; ++inner) {
      int j = static_cast<int>(rng.integer(n_bits));
      bits[j] = !bits[j];
      double cand = f(bits);
      ++res.evaluations;
      double delta = cand - cur;
      if (delta <= 0.0 || rng.uniform() < std::exp(-delta / temp)) {
        cur = cand;
        if (cur < res.f) {
          res.f = cur;
          res.bits = bits;
        }
      } else {
        bits[j] = !bits[j];
      }
    }
  }
  return res;
}

}  // namespace csqaoa
