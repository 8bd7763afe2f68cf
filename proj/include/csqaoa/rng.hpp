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

#ifndef CSQAOA_RNG_HPP_
#define CSQAOA_RNG_HPP_

#include <array>
#include <cstdint>
#include <random>

namespace csqaoa {

// Seeded generator with portable output. All distributions are built from
// the raw 64-bit stream by hand so that results are bit-identical across
// compilers and standard libraries (std::uniform_real_distribution is
// implementation-defined; we never use it).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

  std::uint64_t raw() { return gen_(); }

  // Uniform double in [0, 1) with 53 bits of precision.
  double uniform() { return static_cast<double>(raw() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, bound) by rejection.
  std::uint64_t integer(std::uint64_t bound) {
    if (bound == 0) return 0;
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = raw();
    } while (x >= limit);
    return x % bound;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform point on the unit sphere (Marsaglia 1972).
  std::array<double, 3> unit_vector() {
    for (;;) {
      double u = 2.0 * uniform() - 1.0;
      double v = 2.0 * uniform() - 1.0;
      double s = u * u + v * v;
      if (s >= 1.0 || s == 0.0) continue;
      double f = 2.0 * std::sqrt(1.0 - s);
      return {u * f, v * f, 1.0 - 2.0 * s};
    }
  }

  // Derive an independent, reproducible child stream. Forking depends only
  // on the construction seed and the stream id, not on how much of this
  // generator has been consumed.
  Rng fork(std::uint64_t stream) const {
    return Rng(splitmix(seed_ ^ splitmix(stream + 0x9E3779B97F4A7C15ull)));
  }

  std::uint64_t seed() const { return seed_; }

  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

}  // namespace csqaoa

#endif  // CSQAOA_RNG_HPP_
