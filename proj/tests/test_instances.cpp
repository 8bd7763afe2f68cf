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

#include <cstdio>
#include <fstream>
#include <set>

#include "csqaoa/errors.hpp"
#include "csqaoa/experiments.hpp"
#include "csqaoa/instances.hpp"

using namespace csqaoa;

TEST_CASE("graph generation is seeded and unbiased") {
  MaxKCut a = gen_maxkcut(5, 3, 71);
  MaxKCut b = gen_maxkcut(5, 3, 71);
  CHECK(a.edges == b.edges);

  int with_edge = 0;
  const int trials = 10000;
  for (int s = 0; s < trials; ++s)
    with_edge += !gen_maxkcut(2, 2, 5000 + s).edges.empty();
  CHECK(std::abs(with_edge / static_cast<double>(trials) - 0.5) < 0.02);

  CHECK(num_qubits(CopInstance{gen_maxkcut(6, 3, 1)}) == 15);
}

TEST_CASE("qap generation ranges and symmetry") {
  Qap q = gen_qap(4, 9);
  CHECK(num_qubits(CopInstance{q}) == 16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      CHECK(q.flow[i][j] == q.flow[j][i]);
      CHECK(q.dist[i][j] == q.dist[j][i]);
      if (i != j) {
        CHECK(q.flow[i][j] >= 1.0);
        CHECK(q.flow[i][j] <= 5.0);
        CHECK(q.dist[i][j] >= 1.0);
        CHECK(q.dist[i][j] <= 10.0);
      }
    }
}

TEST_CASE("knapsack benchmark file round trip and derivation") {
  QkpBenchmark bench;
  bench.name = "100_100_1";
  bench.n = 10;
  bench.capacity = 37.0;
  bench.weights = {3, 5, 7, 2, 9, 4, 6, 8, 1, 10};
  bench.profit.resize(10);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10 - i; ++j)
      bench.profit[i].push_back(static_cast<double>(i + j + 1));

  const std::string path = "test_qkp_100_100_1.txt";
  save_qkp(bench, path);
  QkpBenchmark loaded = load_qkp(path);
  CHECK(loaded.n == 10);
  CHECK(loaded.capacity == doctest::Approx(37.0));
  CHECK(loaded.weights == bench.weights);
  CHECK(loaded.profit == bench.profit);

  // Capacity scaling: floor(7 * 37 / 10) = 25; full size keeps it intact.
  Qkp sub = derive_qkp(loaded, 7);
  CHECK(sub.capacity == doctest::Approx(25.0));
  CHECK(sub.n_items == 7);
  CHECK(derive_qkp(loaded, 10).capacity == doctest::Approx(37.0));
  CHECK_THROWS_AS(derive_qkp(loaded, 11), std::invalid_argument);
  std::remove(path.c_str());
}

TEST_CASE("malformed benchmark files report the failing line") {
  const std::string path = "test_qkp_bad.txt";
  {
    std::ofstream out(path);
    out << "3\n10\n1 2\n";  // one weight short
  }
  try {
    load_qkp(path);
    CHECK(false);
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find(":3:") != std::string::npos);
  }
  std::remove(path.c_str());
}

TEST_CASE("brute force agrees with feasibility enumeration") {
  MaxKCut g = gen_maxkcut(4, 2, 33);
  OracleReport rep = brute_force(g);
  std::vector<std::uint64_t> feasible = enumerate_feasible(CopInstance{g});
  CHECK(rep.n_feasible == feasible.size());
  std::set<std::uint64_t> fset(feasible.begin(), feasible.end());
  Encoding enc = encode(CopInstance{g});
  for (std::uint64_t x : rep.optima) {
    CHECK(fset.count(x) == 1);
    CHECK(enc.objective.value(x) == doctest::Approx(rep.optimal_value));
  }
  for (std::uint64_t x : feasible)
    CHECK(enc.objective.value(x) >= rep.optimal_value - 1e-9);
}

TEST_CASE("edgeless graphs make every feasible assignment optimal") {
  MaxKCut g{4, {}, 2};
  OracleReport rep = brute_force(g);
  CHECK(rep.optima.size() == rep.n_feasible);
  CHECK(rep.optimal_value == doctest::Approx(0.0));
}

TEST_CASE("qap oracle equals direct permutation minimization") {
  Qap q = gen_qap(3, 17);
  OracleReport rep = brute_force(q);
  double best = 1e300;
  int perm[3] = {0, 1, 2};
  do {
    double cost = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        if (a == b) continue;
        cost += q.flow[perm[a]][perm[b]] * q.dist[a][b];
      }
    best = std::min(best, cost);
  } while (std::next_permutation(perm, perm + 3));
  CHECK(rep.optimal_value == doctest::Approx(best));
}

TEST_CASE("size caps throw the dedicated error") {
  MaxKCut too_big{10, {}, 3};  // 27 qubits
  CHECK_THROWS_AS(brute_force(too_big), SizeCapError);
}

TEST_CASE("instance json round trip") {
  CopInstance g = gen_maxkcut(4, 3, 3);
  CopInstance g2 = instance_from_json(instance_to_json(g));
  CHECK(std::get<MaxKCut>(g2).edges == std::get<MaxKCut>(g).edges);

  CopInstance q = gen_qap(3, 4);
  CopInstance q2 = instance_from_json(instance_to_json(q));
  CHECK(std::get<Qap>(q2).flow == std::get<Qap>(q).flow);

  Qkp k;
  k.n_items = 2;
  k.weights = {1.0, 2.0};
  k.capacity = 2.0;
  k.profit = {{5.0, 1.0}, {3.0}};
  CopInstance k2 = instance_from_json(instance_to_json(CopInstance{k}));
  CHECK(std::get<Qkp>(k2).profit == k.profit);
}

TEST_CASE("synthetic knapsack suite respects the feasible-ratio filter") {
  auto suite = qkp_suite(4, 6, 2026);
  CHECK(suite.size() == 6);
  for (const auto& s : suite) {
    CHECK(s.oracle.p_feasible >= 0.1);
    CHECK(s.oracle.p_feasible <= 0.5);
    CHECK(s.oracle.optimal_value < 0.0);
  }
  // Deterministic regeneration.
  auto again = qkp_suite(4, 6, 2026);
  for (std::size_t i = 0; i < suite.size(); ++i) {
    CHECK(suite[i].oracle.optimal_value == again[i].oracle.optimal_value);
    CHECK(suite[i].oracle.n_feasible == again[i].oracle.n_feasible);
  }
}

TEST_CASE("compressor database records are matched and reused") {
  // Train one record for a fixed knapsack constraint...
  ConstraintSpec spec =
      ConstraintSpec::weighted_upper({0, 1, 2, 3}, {2, 3, 4, 5}, 5.0);
  auto feasible = enumerate_feasible(4, spec);
  Rng rng(64);
  Rng hr = rng.fork(1);
  CompressedHamiltonian h = build_hcs(4, spec, hr);
  Rng tr = rng.fork(2);
  TrainResult trained = train_with_escalation(
      AnsatzKind::D, h, feasible, 3, TrainBudget{}, tr);
  REQUIRE(trained.met_threshold);
  CompressorRecord rec =
      make_record(spec, trained, AnsatzKind::D, 4, feasible, 64);

  // ...matching is exact on the constraint...
  CHECK(matching_records({rec}, spec, 4).size() == 1);
  ConstraintSpec other =
      ConstraintSpec::weighted_upper({0, 1, 2, 3}, {2, 3, 4, 6}, 5.0);
  CHECK(matching_records({rec}, other, 4).empty());
  CHECK(matching_records({rec}, spec, 5).empty());

  // ...and a matching record short-circuits training entirely: the run
  // below would fail its survival threshold if it had to train with this
  // one-sweep budget.
  Qkp qkp;
  qkp.n_items = 4;
  qkp.weights = {2, 3, 4, 5};
  qkp.capacity = 5.0;
  qkp.profit = {{5, 1, 0, 2}, {4, 0, 1}, {3, 2}, {6}};
  ProblemSetup problem = setup_problem(qkp, 64, "db-reuse");

  RunSettings settings;
  settings.p = 1;
  settings.fixed_A = 10.0;
  settings.n_starts = 2;
  settings.n_compressor_samples = 1;
  settings.train_budget.sa = SaConfig{1, 10.0, 0.1};
  settings.train_budget.doublings = 0;
  settings.compressor_db = {rec};
  RunRow row = run_point(problem, RunMode::CsAnsatzD, settings);
  CHECK(row.p_sur == doctest::Approx(rec.p_sur));
  CHECK(row.p_suc >= 0.0);
}

TEST_CASE("suites are deterministic in their seeds") {
  auto a = maxkcut_suite(4, 3, 3, 7);
  auto b = maxkcut_suite(4, 3, 3, 7);
  REQUIRE(a.size() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(std::get<MaxKCut>(a[i].instance).edges ==
          std::get<MaxKCut>(b[i].instance).edges);
}
