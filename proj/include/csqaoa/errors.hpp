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

#ifndef CSQAOA_ERRORS_HPP_
#define CSQAOA_ERRORS_HPP_

#include <stdexcept>

namespace csqaoa {

// Exhaustive-search size limit exceeded (CLI exit code 4).
struct SizeCapError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Compressor training missed its survival threshold after every escalation
// (CLI exit code 3).
struct TrainingThresholdError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace csqaoa

#endif  // CSQAOA_ERRORS_HPP_
