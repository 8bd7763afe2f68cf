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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "csqaoa/cop.hpp"
#include "csqaoa/qubo.hpp"
#include "csqaoa/rng.hpp"
#include "csqaoa/statevector.hpp"

using namespace csqaoa;

namespace {

// The two-variable toy problem: minimize 2 x_A + x_B subject to
// x_A + x_B = 1 (qubit 0 = A, qubit 1 = B).
Qubo toy_objective() {
  Qubo q(2);
  q.add_linear(0, 2.0);
  q.add_linear(1, 1.0);
  return q;
}

Qubo toy_constraint() {
  Qubo q(2);  // (x_A + x_B - 1)^2 = -x_A - x_B + 2 x_A x_B + 1
  q.add_linear(0, -1.0);
  q.add_linear(1, -1.0);
  q.add(0, 1, 2.0);
  q.offset = 1.0;
  return q;
}

Qubo random_qubo(int n, Rng& rng) {
  Qubo q(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (rng.bernoulli(0.7)) q.add(i, j, rng.uniform(-2.0, 2.0));
  q.offset = rng.uniform(-1.0, 1.0);
  return q;
}

}  // namespace

TEST_CASE("upper-triangular folding") {
  Qubo q(3);
  q.add(2, 0, 1.5);
  q.add(0, 2, 0.5);
  CHECK(q.coeffs.size() == 1);
  CHECK(q.coeffs.at({0, 2}) == doctest::Approx(2.0));
}

TEST_CASE("toy penalty energies before normalization") {
  Qubo combined = toy_objective().plus_scaled(toy_constraint(), 5.0);
  CHECK(combined.value(0b00) == doctest::Approx(5.0));
  CHECK(combined.value(0b10) == doctest::Approx(1.0));  // x_B = 1 (optimal)
  CHECK(combined.value(0b01) == doctest::Approx(2.0));  // x_A = 1
  CHECK(combined.value(0b11) == doctest::Approx(8.0));
}

TEST_CASE("ising conversion preserves energies exactly") {
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng.integer(3));
    Qubo q = random_qubo(n, rng);
    IsingModel ising = qubo_to_ising(q);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
      CHECK(ising.energy(x) == doctest::Approx(q.value(x)).epsilon(1e-10));
  }
}

TEST_CASE("ising energy agrees with the simulator diagonal") {
  Rng rng(78);
  Qubo q = random_qubo(5, rng);
  IsingModel ising = qubo_to_ising(q);
  std::vector<double> diag = ising.diagonal();
  for (std::uint64_t x = 0; x < 32; ++x) {
    CHECK(diag[x] == doctest::Approx(q.value(x)).epsilon(1e-10));
    Statevector s = Statevector::basis(5, x);
    CHECK(expectation_diagonal(s, diag) ==
          doctest::Approx(q.value(x)).epsilon(1e-10));
  }
}

TEST_CASE("assembly normalizes the largest coupling to one") {
  Assembled a = assemble(toy_objective(), toy_constraint(), 5.0);
  CHECK(a.normalized);
  CHECK(a.ising.max_abs_coeff() == doctest::Approx(1.0).epsilon(1e-12));
  // Energies are the toy table divided by the normalization constant.
  CHECK(a.ising.energy(0b00) * a.norm == doctest::Approx(5.0));
  CHECK(a.ising.energy(0b11) * a.norm == doctest::Approx(8.0));

  Assembled zero = assemble(Qubo(2), Qubo(2), 1.0);
  CHECK_FALSE(zero.normalized);
  CHECK(zero.norm == doctest::Approx(1.0));

  // A = 0 keeps the objective shape.
  Assembled pure = assemble(toy_objective(), toy_constraint(), 0.0);
  double ratio = pure.qubo.value(0b01) / toy_objective().value(0b01);
  CHECK(pure.qubo.value(0b10) ==
        doctest::Approx(ratio * toy_objective().value(0b10)));
  CHECK_THROWS_AS(assemble(toy_objective(), toy_constraint(), -1.0),
                  std::invalid_argument);
}

TEST_CASE("max-k cut encoding basics") {
  MaxKCut triangle{3, {{0, 1}, {1, 2}, {0, 2}}, 3};
  Encoding enc = encode_maxkcut(triangle);
  CHECK(enc.layout.n_qubits == 6);  // k (|V| - 1)

  MaxKCut edgeless{4, {}, 2};
  Encoding empty = encode_maxkcut(edgeless);
  CHECK(empty.objective.coeffs.empty());

  MaxKCut bad{3, {}, 1};
  CHECK_THROWS_AS(encode_maxkcut(bad), std::invalid_argument);
}

TEST_CASE("path graph assembled minimum over feasible states") {
  // Path 0-1-2 with k = 2: four feasible assignments; the best value of the
  // objective QUBO is -2 at the all-same-subset assignment.
  MaxKCut path{3, {{0, 1}, {1, 2}}, 2};
  Encoding enc = encode_maxkcut(path);
  double best = 1e30;
  int feasible = 0;
  for (std::uint64_t x = 0; x < 16; ++x) {
    if (!check_feasible(path, x)) continue;
    ++feasible;
    best = std::min(best, enc.objective.value(x));
  }
  CHECK(feasible == 4);
  CHECK(best == doctest::Approx(-2.0));
}

TEST_CASE("max-k cut feasibility predicate") {
  MaxKCut g{3, {{0, 1}}, 3};
  CHECK_FALSE(check_feasible(g, 0));  // all zeros violates every one-hot
  // Vertex 1 in subset 1, vertex 2 in subset 3.
  std::uint64_t bits = (1ull << 0) | (1ull << 5);
  CHECK(check_feasible(g, bits));
}

TEST_CASE("qap encoding matches the two-assignment example") {
  Qap qap{2, {{0, 1}, {1, 0}}, {{0, 1}, {1, 0}}};
  Encoding enc = encode_qap(qap);
  CHECK(enc.layout.n_qubits == 4);
  int feasible = 0;
  for (std::uint64_t x = 0; x < 16; ++x) {
    if (!check_feasible(qap, x)) continue;
    ++feasible;
    // Objective counts both ordered pairs, so each assignment costs 2.
    CHECK(enc.objective.value(x) == doctest::Approx(2.0));
  }
  CHECK(feasible == 2);

  Qap zero_flow{2, {{0, 0}, {0, 0}}, {{0, 1}, {1, 0}}};
  CHECK(encode_qap(zero_flow).objective.coeffs.empty());

  Qap asym{2, {{0, 1}, {2, 0}}, {{0, 1}, {1, 0}}};
  CHECK_THROWS_AS(encode_qap(asym), std::invalid_argument);
}

TEST_CASE("qap brute force equals direct permutation search") {
  Rng rng(5);
  Qap qap{3, {}, {}};
  qap.flow.assign(3, std::vector<double>(3, 0.0));
  qap.dist.assign(3, std::vector<double>(3, 0.0));
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      qap.flow[i][j] = qap.flow[j][i] = 1.0 + rng.integer(5);
      qap.dist[i][j] = qap.dist[j][i] = 1.0 + rng.integer(10);
    }
  Encoding enc = encode_qap(qap);

  double best_qubo = 1e30;
  for (std::uint64_t x = 0; x < 512; ++x)
    if (check_feasible(qap, x))
      best_qubo = std::min(best_qubo, enc.objective.value(x));

  // All 3! permutations directly: perm[a] = facility at location a.
  double best_perm = 1e30;
  int perm[3] = {0, 1, 2};
  do {
    double cost = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        if (a == b) continue;
        cost += qap.flow[perm[a]][perm[b]] * qap.dist[a][b];
      }
    best_perm = std::min(best_perm, cost);
  } while (std::next_permutation(perm, perm + 3));
  CHECK(best_qubo == doctest::Approx(best_perm));
}

TEST_CASE("qkp encoding") {
  Qkp single{1, {{3.0}}, {1.0}, 1.0};
  Encoding enc = encode_qkp(single);
  CHECK(enc.objective.value(1) == doctest::Approx(-3.0));
  CHECK(enc.constraint.value(1) == doctest::Approx(1.0));
  CHECK(enc.objective.value(0) == doctest::Approx(0.0));

  Qkp bad{1, {{3.0}}, {1.0}, 0.0};
  CHECK_THROWS_AS(encode_qkp(bad), std::invalid_argument);
}

TEST_CASE("qkp energies match a hand-rolled evaluator") {
  Rng rng(9);
  Qkp qkp;
  qkp.n_items = 4;
  qkp.weights = {2.0, 3.0, 4.0, 5.0};
  qkp.capacity = 7.0;
  qkp.profit.resize(4);
  for (int i = 0; i < 4; ++i) {
    qkp.profit[i].resize(4 - i);
    for (int j = 0; j < 4 - i; ++j)
      qkp.profit[i][j] = static_cast<double>(rng.integer(20));
  }
  Encoding enc = encode_qkp(qkp);
  for (std::uint64_t x = 0; x < 16; ++x) {
    double obj = 0.0, weight = 0.0;
    for (int i = 0; i < 4; ++i) {
      if (!((x >> i) & 1)) continue;
      weight += qkp.weights[i];
      for (int j = i; j < 4; ++j)
        if ((x >> j) & 1) obj -= qkp.profit_at(i, j);
    }
    double cst = (weight / qkp.capacity) * (weight / qkp.capacity);
    CHECK(enc.objective.value(x) == doctest::Approx(obj).epsilon(1e-12));
    CHECK(enc.constraint.value(x) == doctest::Approx(cst).epsilon(1e-12));
    CHECK(check_feasible(qkp, x) == (weight <= qkp.capacity));
  }
  CHECK(check_feasible(qkp, 0));  // the empty selection fits
}

TEST_CASE("penalty dominance pushes the minimizer into the feasible set") {
  Rng rng(13);
  for (int trial = 0; trial < 9; ++trial) {
    CopInstance inst;
    switch (trial % 3) {
      case 0: {
        MaxKCut g{3, {}, 2};
        for (int u = 0; u < 3; ++u)
          for (int v = u + 1; v < 3; ++v)
            if (rng.bernoulli(0.5)) g.edges.emplace_back(u, v);
        inst = g;
        break;
      }
      case 1: {
        Qap q{2, {}, {}};
        double f = 1.0 + rng.integer(5), d = 1.0 + rng.integer(10);
        q.flow = {{0, f}, {f, 0}};
        q.dist = {{0, d}, {d, 0}};
        inst = q;
        break;
      }
      default: {
        Qkp q;
        q.n_items = 3;
        q.weights = {2.0, 3.0, 4.0};
        q.capacity = 5.0;
        q.profit = {{1.0 + rng.integer(9), rng.uniform(0, 5), 1.0},
                    {1.0 + rng.integer(9), 2.0},
                    {1.0 + rng.integer(9)}};
        inst = q;
        break;
      }
    }
    Encoding enc = encode(inst);
    double max_obj = 0.0;
    for (const auto& [ij, v] : enc.objective.coeffs)
      max_obj = std::max(max_obj, std::abs(v));
    double A = 10.0 * std::max(1.0, max_obj);
    Qubo combined = enc.objective.plus_scaled(enc.constraint, A);
    std::uint64_t best = 0;
    double best_v = 1e300;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << enc.layout.n_qubits); ++x)
      if (combined.value(x) < best_v) {
        best_v = combined.value(x);
        best = x;
      }
    CHECK(check_feasible(inst, best));
  }
}

TEST_CASE("json export shape") {
  Qubo q(2);
  q.add(0, 1, 2.5);
  q.offset = 1.0;
  std::string js = qubo_to_json(q);
  CHECK(js.find("\"n\":2") != std::string::npos);
  CHECK(js.find("entries") != std::string::npos);
  IsingModel ising = qubo_to_ising(q);
  CHECK(ising.to_json().find("offset") != std::string::npos);
}
