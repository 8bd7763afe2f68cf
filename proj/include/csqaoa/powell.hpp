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

#ifndef CSQAOA_POWELL_HPP_
#define CSQAOA_POWELL_HPP_

#include <functional>
#include <vector>

namespace csqaoa {

struct PowellConfig {
  // Stop when 2 (f_prev - f_cur) <= ftol (|f_prev| + |f_cur|) + 1e-20 after
  // a full sweep over the direction set.
  double ftol = 0.001;
  int max_iter = 1000;       // full direction sweeps
  double line_tol = 1e-4;    // Brent bracketing tolerance along a line
  double initial_step = 1.0;
};

struct PowellResult {
  std::vector<double> x;
  double f = 0.0;
  int iterations = 0;
  long evaluations = 0;
  bool converged = false;
};

using ObjectiveFn = std::function<double(const std::vector<double>&)>;

// Powell's conjugate-direction minimizer with a bracketing Brent line
// search. Derivative-free; aborts on non-finite objective values.
PowellResult powell_minimize(const ObjectiveFn& f,
                             const std::vector<double>& x0,
                             const PowellConfig& config = {});

}  // namespace csqaoa

#endif  // CSQAOA_POWELL_HPP_
