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
#include <set>

#include "csqaoa/compressor.hpp"
#include "csqaoa/train.hpp"
#include "oracles.hpp"

using namespace csqaoa;

namespace {

const PermTable& first_perm(const Compressor& c) {
  return std::get<PermTable>(c.stages.at(0));
}

// Dense matrix of a compressor's circuit gate form, via the oracle gates.
oracles::Matrix dense_of_circuit(const Circuit& c, int n) {
  oracles::Matrix u = oracles::eye(std::size_t{1} << n);
  for (const auto& g : c.gates)
    u = oracles::matmul(oracles::gate_matrix(g, n), u);
  return u;
}

ConstraintSpec sum_at_most(int n, int u) {
  std::vector<int> vars(n);
  for (int i = 0; i < n; ++i) vars[i] = i;
  return ConstraintSpec::sum_range(vars, 0, u);
}

}  // namespace

TEST_CASE("one-hot pair compressor follows the two-variable convention") {
  Compressor c = build_onehot_binary(2, {0, 1});
  CHECK(c.m() == 1);
  CHECK(c.zero_qubits == std::vector<int>{0});
  // x at listed position 1 -> code 0; position 2 -> code 1 on qubit 1.
  CHECK(first_perm(c).table[1] == 0);
  CHECK(first_perm(c).table[2] == 2);
}

TEST_CASE("one-hot quad compressor sends every one-hot state into the sector") {
  Compressor c = build_onehot_binary(4, {0, 1, 2, 3});
  CHECK(c.m() == 2);
  const std::uint64_t mask = c.zero_mask();
  std::set<std::uint64_t> images;
  for (int j = 0; j < 4; ++j) {
    std::uint64_t img = first_perm(c).table[std::uint64_t{1} << j];
    CHECK((img & mask) == 0);
    images.insert(img);
  }
  CHECK(images.size() == 4);
}

TEST_CASE("one-hot triple compressor leaks one compressed state") {
  Compressor c = build_onehot_binary(3, {0, 1, 2});
  CHECK(c.m() == 2);
  const std::uint64_t mask = c.zero_mask();
  std::set<std::uint64_t> sector_images;
  for (std::uint64_t x = 0; x < 8; ++x) {
    std::uint64_t img = first_perm(c).table[x];
    if ((img & mask) == 0) sector_images.insert(x);
  }
  // All four sector slots are hit; three sources are the one-hot states,
  // the fourth is infeasible leakage.
  CHECK(sector_images.size() == 4);
  int onehot_sources = 0;
  for (std::uint64_t x : sector_images)
    if (x == 1 || x == 2 || x == 4) ++onehot_sources;
  CHECK(onehot_sources == 3);
}

TEST_CASE("compressor permutations are bijections") {
  for (int k = 2; k <= 4; ++k) {
    std::vector<int> group(k);
    for (int i = 0; i < k; ++i) group[i] = i;
    Compressor c = build_onehot_binary(k, group);
    std::vector<bool> seen(std::uint64_t{1} << k, false);
    for (std::uint64_t y : first_perm(c).table) {
      CHECK_FALSE(seen[y]);
      seen[y] = true;
    }
  }
}

TEST_CASE("gate forms reproduce the permutations exactly") {
  // |V| = 2, 3 need no borrow; |V| = 4 borrows one spare qubit.
  struct Case {
    int n_total;
    std::vector<int> group;
  };
  for (const auto& tc : {Case{2, {0, 1}}, Case{3, {0, 1, 2}},
                         Case{4, {1, 2, 3}}, Case{5, {0, 1, 2, 3}}}) {
    Compressor c = build_onehot_binary(tc.n_total, tc.group);
    REQUIRE(c.gate_form.has_value());
    const std::uint64_t dim = std::uint64_t{1} << tc.n_total;
    for (std::uint64_t x = 0; x < dim; ++x) {
      Statevector s = Statevector::basis(tc.n_total, x);
      apply_circuit(s, *c.gate_form);
      std::uint64_t want = first_perm(c).table[x];
      CHECK(std::abs(s.amps[want] - 1.0) < 1e-12);
    }
  }
  // No gate form exists for a standalone one-hot quad (no spare qubit).
  Compressor quad = build_onehot_binary(4, {0, 1, 2, 3});
  CHECK_FALSE(quad.gate_form.has_value());
}

TEST_CASE("parity compressors zero the first listed qubit") {
  // Even parity on four qubits: input 0b0011 (qubits 0,1 set) has even
  // parity, so qubit 0 is cleared.
  Compressor even = build_parity(4, {0, 1, 2, 3}, false);
  CHECK(even.m() == 3);
  CHECK(first_perm(even).table[0b0011] == 0b0010);
  // Odd parity on |1000> (only qubit 0 set): X after the ladder clears it.
  Compressor odd = build_parity(4, {0, 1, 2, 3}, true);
  CHECK(first_perm(odd).table[0b0001] == 0b0000);

  // Every even-parity state lands in the sector; parity compression is exact.
  std::vector<std::uint64_t> feasible;
  for (std::uint64_t x = 0; x < 16; ++x)
    if (__builtin_popcountll(x) % 2 == 0) feasible.push_back(x);
  CHECK(survival_rate(even, feasible) == doctest::Approx(1.0));

  // Gate form is the CNOT ladder with the group head as target.
  REQUIRE(even.gate_form.has_value());
  REQUIRE(even.gate_form->gates.size() == 3);
  for (const auto& g : even.gate_form->gates)
    CHECK(std::get<Cnot>(g).t == 0);
  REQUIRE(odd.gate_form.has_value());
  CHECK(odd.gate_form->gates.size() == 4);
  CHECK(std::holds_alternative<PauliX>(odd.gate_form->gates.back()));
  for (std::uint64_t x = 0; x < 16; ++x) {
    Statevector s = Statevector::basis(4, x);
    apply_circuit(s, *even.gate_form);
    CHECK(std::abs(s.amps[first_perm(even).table[x]] - 1.0) < 1e-12);
  }
}

TEST_CASE("qap digit parities match the five-facility pattern") {
  std::vector<bool> odd5 = qap_digit_parities(5);
  REQUIRE(odd5.size() == 3);
  CHECK_FALSE(odd5[0]);  // digit sums 2, 2, 1 -> even, even, odd
  CHECK_FALSE(odd5[1]);
  CHECK(odd5[2]);
}

TEST_CASE("qap compressor widths") {
  CHECK(build_qap_compressor(4, QapEncoding::Binary).m() == 8);
  CHECK(build_qap_compressor(4, QapEncoding::BinaryParity).m() == 6);
  CHECK(build_qap_compressor(2, QapEncoding::BinaryParity).m() == 1);
}

TEST_CASE("qap pair compressor is exact on both permutations") {
  Compressor c = build_qap_compressor(2, QapEncoding::BinaryParity);
  // Feasible assignments: identity (qubits 0 and 3) and swap (1 and 2).
  std::vector<std::uint64_t> feasible{0b1001, 0b0110};
  CHECK(survival_rate(c, feasible) == doctest::Approx(1.0));
  // Exhaustive: exactly 2^m sources land in the sector.
  const std::uint64_t mask = c.zero_mask();
  int in_sector = 0;
  for (std::uint64_t x = 0; x < 16; ++x)
    if ((c.classical_map(x, false) & mask) == 0) ++in_sector;
  CHECK(in_sector == 2);
}

TEST_CASE("single-constraint composition equals the standalone compressor") {
  CompressionPlan plan;
  plan.constraint = ConstraintSpec::one_hot({0, 1, 2});
  Rng rng(1);
  Compressor composed = compose_constraints(3, {plan}, rng);
  Compressor direct = build_onehot_binary(3, {0, 1, 2});
  for (std::uint64_t x = 0; x < 8; ++x)
    CHECK(composed.classical_map(x, false) == direct.classical_map(x, false));
  CHECK(composed.m() == direct.m());
}

TEST_CASE("independent constraints compose to a tensor product") {
  // Two one-hot triples on disjoint qubits: the composition acts blockwise.
  CompressionPlan p1, p2;
  p1.constraint = ConstraintSpec::one_hot({0, 1, 2});
  p2.constraint = ConstraintSpec::one_hot({3, 4, 5});
  Rng rng(2);
  Compressor composed = compose_constraints(6, {p1, p2}, rng);
  CHECK(composed.m() == 4);

  Compressor first = build_onehot_binary(3, {0, 1, 2});
  for (std::uint64_t x = 0; x < 64; ++x) {
    std::uint64_t lo = x & 7, hi = (x >> 3) & 7;
    std::uint64_t want = first.classical_map(lo, false) |
                         (first.classical_map(hi, false) << 3);
    CHECK(composed.classical_map(x, false) == want);
  }
}

TEST_CASE("qap composition via constraint plans matches the builder") {
  std::vector<CompressionPlan> plans;
  for (int a = 0; a < 2; ++a) {
    CompressionPlan p;
    p.constraint = ConstraintSpec::one_hot({2 * a, 2 * a + 1});
    plans.push_back(p);
  }
  CompressionPlan parity;
  parity.constraint = ConstraintSpec::parity({1, 3}, qap_digit_parities(2)[0]);
  plans.push_back(parity);
  Rng rng(3);
  Compressor composed = compose_constraints(4, plans, rng);
  Compressor direct = build_qap_compressor(2, QapEncoding::BinaryParity);
  for (std::uint64_t x = 0; x < 16; ++x)
    CHECK(composed.classical_map(x, false) == direct.classical_map(x, false));
}

TEST_CASE("compressed Hamiltonian for a knapsack constraint") {
  std::vector<double> w{2.0, 1.0, 3.0};
  ConstraintSpec spec = ConstraintSpec::weighted_upper({0, 1, 2}, w, 3.0);
  Rng rng(11);
  CompressedHamiltonian h = build_hcs(3, spec, rng);
  for (std::uint64_t x = 0; x < 8; ++x) {
    double g = 0.0, tilt = 0.0;
    for (int i = 0; i < 3; ++i) {
      if ((x >> i) & 1) g += w[i];
      tilt += ((x >> i) & 1) ? h.epsilon[i] : -h.epsilon[i];
    }
    CHECK(h.diag[x] == doctest::Approx(g - 3.0 + tilt).epsilon(1e-12));
  }
  for (double e : h.epsilon) CHECK(std::abs(e) < 1.0 / 6.0);
}

TEST_CASE("range Hamiltonian ranks feasible states lowest") {
  ConstraintSpec spec = sum_at_most(3, 1);
  Rng rng(12);
  CompressedHamiltonian h = build_hcs(3, spec, rng);
  // The four smallest diagonal entries are exactly the weight <= 1 states.
  std::vector<std::pair<double, std::uint64_t>> ranked;
  for (std::uint64_t x = 0; x < 8; ++x) ranked.emplace_back(h.diag[x], x);
  std::sort(ranked.begin(), ranked.end());
  std::set<std::uint64_t> low;
  for (int i = 0; i < 4; ++i) low.insert(ranked[i].second);
  CHECK(low == std::set<std::uint64_t>{0, 1, 2, 4});

  // An equality constraint's base term (g - 1)^2 vanishes exactly on the
  // feasible states once the tilt is subtracted off.
  ConstraintSpec eq = ConstraintSpec::sum_range({0, 1, 2}, 1, 1);
  CompressedHamiltonian manual = build_hcs(3, eq, rng);
  for (std::uint64_t x = 0; x < 8; ++x) {
    double tilt = 0.0;
    for (int i = 0; i < 3; ++i)
      tilt += ((x >> i) & 1) ? manual.epsilon[i] : -manual.epsilon[i];
    double base = manual.diag[x] - tilt;
    double g = __builtin_popcountll(x);
    CHECK(base == doctest::Approx((g - 1.0) * (g - 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("hcs audits pass across kinds and sizes") {
  Rng rng(13);
  for (int n = 2; n <= 8; ++n) {
    std::vector<ConstraintSpec> specs;
    specs.push_back(sum_at_most(n, 1));
    if (n >= 3) specs.push_back(sum_at_most(n, 2));
    specs.push_back(ConstraintSpec::one_hot([n] {
      std::vector<int> v(n);
      for (int i = 0; i < n; ++i) v[i] = i;
      return v;
    }()));
    specs.push_back(ConstraintSpec::parity([n] {
      std::vector<int> v(n);
      for (int i = 0; i < n; ++i) v[i] = i;
      return v;
    }(), false));
    for (const auto& spec : specs) {
      CompressedHamiltonian h = build_hcs(n, spec, rng);
      HcsAudit audit = audit_hcs(h, spec);
      CHECK(audit.nondegenerate);
      CHECK(audit.separated);
    }
  }
}

TEST_CASE("direct evaluation of the compression objective") {
  // Identity with m = N gives the mean diagonal.
  ConstraintSpec spec = sum_at_most(3, 1);
  Rng rng(21);
  CompressedHamiltonian h = build_hcs(3, spec, rng);
  Compressor id = Compressor::identity(3);
  double mean = 0.0;
  for (double v : h.diag) mean += v;
  mean /= 8.0;
  CHECK(e_direct(id, h) == doctest::Approx(mean).epsilon(1e-12));

  // Exact one-hot quad against its own constraint with zero tilt: 0.
  ConstraintSpec onehot4 = ConstraintSpec::one_hot({0, 1, 2, 3});
  CompressedHamiltonian h4;
  h4.n_qubits = 4;
  h4.epsilon.assign(4, 0.0);
  h4.diag.resize(16);
  for (std::uint64_t x = 0; x < 16; ++x) {
    double g = __builtin_popcountll(x);
    h4.diag[x] = (g - 1.0) * (g - 1.0);
  }
  Compressor quad = build_onehot_binary(4, {0, 1, 2, 3});
  CHECK(e_direct(quad, h4) == doctest::Approx(0.0));
}

TEST_CASE("direct evaluation matches a dense-matrix oracle") {
  // Random continuous compressor, N = 4, m = 2.
  Rng rng(22);
  CParams params;
  params.n_qubits = 4;
  params.m = 2;
  params.layers = 1;
  params.theta.resize(c_ansatz_param_count(4, 2, 1));
  for (double& t : params.theta) t = rng.uniform(0.0, 3.14159);
  Compressor u = compressor_from_c(params);

  ConstraintSpec spec = sum_at_most(4, 1);
  CompressedHamiltonian h = build_hcs(4, spec, rng);

  // Dense route: U = inverse of the decoded adjoint circuit.
  Circuit adj = decode_c_ansatz(params);
  oracles::Matrix u_adj = dense_of_circuit(adj, 4);
  double acc = 0.0;
  for (std::uint64_t q = 0; q < 4; ++q) {
    std::vector<oracles::complex_t> v(16, 0.0);
    v[q << 2] = 1.0;  // |0 q> with the compressed register on high qubits
    auto decoded = oracles::matvec(u_adj, v);
    for (std::uint64_t x = 0; x < 16; ++x)
      acc += h.diag[x] * std::norm(decoded[x]);
  }
  acc /= 4.0;
  CHECK(e_direct(u, h) == doctest::Approx(acc).epsilon(1e-12));
}

TEST_CASE("entangled evaluation equals the direct route") {
  Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 3 + static_cast<int>(rng.integer(3));
    int m = 1 + static_cast<int>(rng.integer(std::min(3, n - 1)));
    CParams params;
    params.n_qubits = n;
    params.m = m;
    params.layers = 1;
    params.theta.resize(c_ansatz_param_count(n, m, 1));
    for (double& t : params.theta) t = rng.uniform(0.0, 3.14159);
    Compressor u = compressor_from_c(params);

    ConstraintSpec spec = sum_at_most(n, 1 + static_cast<int>(rng.integer(2)));
    CompressedHamiltonian h = build_hcs(n, spec, rng);
    CHECK(e_entangled(u, h) == doctest::Approx(e_direct(u, h)).epsilon(1e-9));
  }
}

TEST_CASE("sampled entangled evaluation sits within its error bars") {
  Rng rng(24);
  CParams params;
  params.n_qubits = 3;
  params.m = 1;
  params.layers = 1;
  params.theta.resize(c_ansatz_param_count(3, 1, 1));
  for (double& t : params.theta) t = rng.uniform(0.0, 3.14159);
  Compressor u = compressor_from_c(params);
  ConstraintSpec spec = sum_at_most(3, 1);
  CompressedHamiltonian h = build_hcs(3, spec, rng);

  double exact = e_entangled(u, h);
  const int shots = 100000;
  double sampled = e_entangled_sampled(u, h, shots, rng);
  double spread = 0.0;
  for (double v : h.diag) spread = std::max(spread, std::abs(v - exact));
  double sigma = spread / std::sqrt(static_cast<double>(shots));
  CHECK(std::abs(sampled - exact) < 3.0 * std::max(sigma, 1e-6));
}

TEST_CASE("survival rate of deterministic and random compressors") {
  Compressor parity = build_parity(3, {0, 1, 2}, false);
  std::vector<std::uint64_t> even_states;
  for (std::uint64_t x = 0; x < 8; ++x)
    if (__builtin_popcountll(x) % 2 == 0) even_states.push_back(x);
  CHECK(survival_rate(parity, even_states) == doctest::Approx(1.0));

  Compressor triple = build_onehot_binary(3, {0, 1, 2});
  CHECK(survival_rate(triple, {1, 2, 4}) == doctest::Approx(1.0));

  Rng rng(31);
  CParams params;
  params.n_qubits = 3;
  params.m = 2;
  params.layers = 1;
  params.theta.resize(c_ansatz_param_count(3, 2, 1));
  for (double& t : params.theta) t = rng.uniform(0.0, 3.14159);
  Compressor random_u = compressor_from_c(params);
  double p = survival_rate(random_u, {0, 1, 2, 4});
  CHECK(p >= 0.0);
  CHECK(p <= 1.0 + 1e-12);

  CHECK_THROWS_AS(survival_rate(parity, {}), std::invalid_argument);
}

TEST_CASE("width estimation from sampling") {
  Rng rng(41);
  Compressor id = Compressor::identity(3);

  // Always-satisfied constraint keeps the width.
  ConstraintSpec always = sum_at_most(3, 3);
  CHECK(estimate_compressed_width(id, always, 2000, rng) == 3);

  // Sum <= 1 on three qubits: 4 of 8 states -> m = 2.
  CHECK(estimate_compressed_width(id, sum_at_most(3, 1), 10000, rng) == 2);

  // Constraint family: the estimate tracks ceil(log2 |F|) within one.
  struct Case { int n, u; };
  for (const auto& tc : {Case{4, 1}, Case{5, 1}, Case{5, 2}, Case{6, 2}}) {
    Compressor wide = Compressor::identity(tc.n);
    ConstraintSpec spec = sum_at_most(tc.n, tc.u);
    std::uint64_t count = enumerate_feasible(tc.n, spec).size();
    int exact_m = 0;
    while ((std::uint64_t{1} << exact_m) < count) ++exact_m;
    int est = estimate_compressed_width(wide, spec, 10000, rng);
    CHECK(std::abs(est - exact_m) <= 1);
  }
}

TEST_CASE("pair compressor conjugates the X mixer into the XY mixer") {
  Compressor pair = build_onehot_binary(2, {0, 1});
  for (double beta : {0.1, 0.7, 2.3}) {
    for (std::uint64_t feas : {std::uint64_t{1}, std::uint64_t{2}}) {
      Statevector via_cs = Statevector::basis(2, feas);
      pair.apply(via_cs, true);
      apply_gate(via_cs, RotX{1, beta});  // mixer on the compressed qubit
      pair.apply(via_cs, false);

      Statevector via_xy = Statevector::basis(2, feas);
      apply_gate(via_xy, BlockXY{{0, 1}, beta});

      for (std::uint64_t i = 0; i < 4; ++i)
        CHECK(std::abs(via_cs.amps[i] - via_xy.amps[i]) < 1e-12);
    }
  }
}

TEST_CASE("random permutations synthesize correctly") {
  Rng rng(55);
  for (int trial = 0; trial < 4; ++trial) {
    const int k = 3;
    std::vector<std::uint64_t> perm(8);
    for (std::uint64_t i = 0; i < 8; ++i) perm[i] = i;
    for (std::uint64_t i = 7; i > 0; --i)
      std::swap(perm[i], perm[rng.integer(i + 1)]);
    Circuit c = synthesize_permutation(perm, {0, 1, 2}, {});
    for (std::uint64_t x = 0; x < 8; ++x) {
      Statevector s = Statevector::basis(k, x);
      apply_circuit(s, c);
      CHECK(std::abs(s.amps[perm[x]] - 1.0) < 1e-12);
    }
  }
  // Four qubits with one borrowed spare.
  std::vector<std::uint64_t> perm(16);
  for (std::uint64_t i = 0; i < 16; ++i) perm[i] = (i + 5) % 16;
  Circuit c = synthesize_permutation(perm, {0, 1, 2, 3}, {4});
  for (std::uint64_t x = 0; x < 16; ++x) {
    Statevector s = Statevector::basis(5, x);
    apply_circuit(s, c);
    std::uint64_t want = perm[x] | (x & 16);
    CHECK(std::abs(s.amps[want] - 1.0) < 1e-12);
  }
}
