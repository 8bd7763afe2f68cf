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

#include <cmath>

#include "csqaoa/experiments.hpp"
#include "csqaoa/qaoa.hpp"

using namespace csqaoa;

namespace {

// Two-variable toy: minimize 2 x_A + x_B subject to x_A + x_B = 1.
Qubo toy_objective() {
  Qubo q(2);
  q.add_linear(0, 2.0);
  q.add_linear(1, 1.0);
  return q;
}

Qubo toy_constraint() {
  Qubo q(2);
  q.add_linear(0, -1.0);
  q.add_linear(1, -1.0);
  q.add(0, 1, 2.0);
  q.offset = 1.0;
  return q;
}

QaoaConfig toy_cs_config(int p) {
  QaoaConfig cfg;
  cfg.p = p;
  cfg.mode = MixerMode::CS;
  cfg.ising = assemble(toy_objective(), toy_constraint(), 5.0).ising;
  cfg.compressor = build_onehot_binary(2, {0, 1});
  cfg.seed = 11;
  return cfg;
}

}  // namespace

TEST_CASE("initial states per mode") {
  QaoaConfig x;
  x.p = 0;
  x.mode = MixerMode::X;
  x.ising = IsingModel(2);
  QaoaEngine ex(x);
  Statevector sx = ex.prepare_initial();
  for (std::uint64_t i = 0; i < 4; ++i)
    CHECK(std::abs(sx.amps[i] - 0.5) < 1e-15);

  QaoaConfig w;
  w.p = 0;
  w.mode = MixerMode::XY;
  w.ising = IsingModel(3);
  w.xy_blocks = {{0, 1, 2}};
  QaoaEngine ew(w);
  Statevector sw = ew.prepare_initial();
  const double a = 1.0 / std::sqrt(3.0);
  CHECK(std::abs(sw.amps[1] - a) < 1e-15);
  CHECK(std::abs(sw.amps[2] - a) < 1e-15);
  CHECK(std::abs(sw.amps[4] - a) < 1e-15);
  CHECK(std::abs(sw.amps[0]) < 1e-15);

  QaoaConfig cs = toy_cs_config(0);
  QaoaEngine ec(cs);
  Statevector sc = ec.prepare_initial();
  // Zeros on qubit 0, |+> on qubit 1: support on indices 0 and 2.
  CHECK(std::abs(sc.amps[0] - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(sc.amps[2] - 1.0 / std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("zero-layer CS state is the feasible superposition") {
  QaoaEngine engine(toy_cs_config(0));
  BuildOutcome out = engine.build_state({}, {});
  CHECK(out.layer_keep.empty());
  // U_cs^dag |0,+> is the W state over the two feasible assignments.
  CHECK(std::abs(out.state.amps[1] - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(out.state.amps[2] - 1.0 / std::sqrt(2.0)) < 1e-12);
  // Success probability at p = 0: overlap with the optimum |x_B = 1>.
  CHECK(success_probability(out.state, {2}, out.layer_keep) ==
        doctest::Approx(0.5));
}

TEST_CASE("success probability formula") {
  Statevector s = Statevector::basis(2, 3);
  CHECK(success_probability(s, {3}, {0.5}) == doctest::Approx(0.5));
  Statevector u = Statevector::uniform(2);
  CHECK(success_probability(u, {0, 1, 2, 3}, {}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(success_probability(u, {}, {}), std::invalid_argument);
}

TEST_CASE("deterministic compressors never discard") {
  QaoaEngine engine(toy_cs_config(4));
  Rng rng(5);
  std::vector<double> beta(4), gamma(4);
  for (int i = 0; i < 4; ++i) {
    beta[i] = rng.uniform(0.0, 6.28);
    gamma[i] = rng.uniform(0.0, 6.28);
  }
  BuildOutcome out = engine.build_state(beta, gamma);
  REQUIRE(out.layer_keep.size() == 4);
  for (double k : out.layer_keep) CHECK(std::abs(k - 1.0) < 1e-12);
}

TEST_CASE("flat Ising model leaves only the initial overlap") {
  QaoaConfig cfg;
  cfg.p = 1;
  cfg.mode = MixerMode::X;
  cfg.ising = IsingModel(2);
  cfg.ising.H0 = 3.0;
  cfg.n_starts = 2;
  cfg.seed = 3;
  QaoaResult res = optimize_qaoa(cfg, {0}, PowellConfig{});
  CHECK(res.energy == doctest::Approx(3.0));
  CHECK(res.p_suc == doctest::Approx(0.25));
  CHECK(res.p_dis == doctest::Approx(0.0));
}

TEST_CASE("single-layer CS run solves the toy exactly") {
  QaoaConfig cfg = toy_cs_config(1);
  cfg.n_starts = 5;
  QaoaResult res = optimize_qaoa(cfg, {2}, PowellConfig{});
  CHECK(res.p_suc > 0.5);
  CHECK(res.p_suc > 0.99);  // the landscape admits an exact solution
  CHECK(res.p_dis == doctest::Approx(0.0));
  CHECK(res.p_suc <= 1.0 - res.p_dis + 1e-12);
}

TEST_CASE("gate-level circuit equals the coherent fast path") {
  for (int mode = 0; mode < 2; ++mode) {
    QaoaConfig cfg = toy_cs_config(2);
    if (mode == 1) cfg.mode = MixerMode::X;
    QaoaEngine engine(cfg);
    std::vector<double> beta{0.7, 1.9}, gamma{0.4, 2.6};
    BuildOutcome direct = engine.build_state(beta, gamma);

    Circuit circuit = engine.gate_circuit(beta, gamma);
    Statevector s = engine.prepare_initial();
    std::size_t gi = 0;
    for (std::size_t mark : circuit.layer_marks) {
      for (; gi < mark; ++gi) apply_gate(s, circuit.gates[gi]);
      Projection proj = project_zeros(s, cfg.compressor->zero_qubits);
      REQUIRE_FALSE(proj.discarded);
      s = std::move(proj.state);
    }
    for (; gi < circuit.gates.size(); ++gi) apply_gate(s, circuit.gates[gi]);

    for (std::uint64_t i = 0; i < s.dim(); ++i)
      CHECK(std::abs(s.amps[i] - direct.state.amps[i]) < 1e-9);
  }
}

TEST_CASE("noisy evaluation at zero error equals the coherent run") {
  QaoaConfig cfg = toy_cs_config(2);
  cfg.noise_eps = 0.0;
  QaoaEngine engine(cfg);
  std::vector<double> beta{0.8, 0.3}, gamma{1.1, 0.9};
  QaoaMetrics coherent = engine.evaluate(beta, gamma, {2});

  QaoaConfig noisy_cfg = cfg;
  noisy_cfg.noise_eps = 1e-12;  // noisy path, vanishing angle
  noisy_cfg.n_trajectories = 2;
  QaoaEngine noisy(noisy_cfg);
  QaoaMetrics m = noisy.evaluate(beta, gamma, {2});
  CHECK(m.p_suc == doctest::Approx(coherent.p_suc).epsilon(1e-6));
  CHECK(m.p_dis == doctest::Approx(coherent.p_dis).epsilon(1e-6));
}

TEST_CASE("noise degrades the toy success probability") {
  QaoaConfig cfg = toy_cs_config(1);
  cfg.n_starts = 5;
  QaoaResult coherent = optimize_qaoa(cfg, {2}, PowellConfig{});

  QaoaConfig noisy = cfg;
  noisy.noise_eps = 0.05;
  noisy.n_trajectories = 20;
  QaoaEngine engine(noisy);
  QaoaMetrics m = engine.evaluate(coherent.beta, coherent.gamma, {2});
  CHECK(m.p_suc < coherent.p_suc);
  CHECK(m.p_dis > 0.0);
  CHECK(m.p_suc <= 1.0 - m.p_dis + 1e-12);
}

TEST_CASE("blockwise XY mixing keeps the feasible sector") {
  MaxKCut g{3, {{0, 1}, {1, 2}}, 2};
  Encoding enc = encode_maxkcut(g);
  QaoaConfig cfg;
  cfg.p = 3;
  cfg.mode = MixerMode::XY;
  cfg.ising = assemble(enc.objective, enc.constraint, 3.0).ising;
  cfg.xy_blocks = enc.layout.onehot_groups();
  QaoaEngine engine(cfg);
  Rng rng(8);
  std::vector<double> beta(3), gamma(3);
  for (int i = 0; i < 3; ++i) {
    beta[i] = rng.uniform(0.0, 6.28);
    gamma[i] = rng.uniform(0.0, 6.28);
  }
  BuildOutcome out = engine.build_state(beta, gamma);
  double infeasible_mass = 0.0;
  for (std::uint64_t x = 0; x < out.state.dim(); ++x)
    if (!check_feasible(g, x)) infeasible_mass += out.state.probability(x);
  CHECK(infeasible_mass < 1e-12);
}

TEST_CASE("leaky compressors still respect the metric bound") {
  // One-hot triple blocks leak one compressed state each.
  MaxKCut g{3, {{0, 1}, {0, 2}}, 3};
  Encoding enc = encode_maxkcut(g);
  QaoaConfig cfg;
  cfg.p = 2;
  cfg.mode = MixerMode::CS;
  cfg.ising = assemble(enc.objective, enc.constraint, 4.0).ising;
  Compressor acc = Compressor::identity(6);
  for (const auto& group : enc.layout.onehot_groups())
    acc = compose(acc, build_onehot_binary(6, group));
  cfg.compressor = acc;
  cfg.n_starts = 3;
  cfg.seed = 21;
  OracleReport oracle = brute_force(g);
  QaoaResult res = optimize_qaoa(cfg, oracle.optima, PowellConfig{});
  CHECK(res.p_suc <= 1.0 - res.p_dis + 1e-12);
  CHECK(res.p_dis == doctest::Approx(0.0));  // permutations never discard
}

TEST_CASE("exact compressors keep all amplitude mass feasible") {
  // Parity compression is exact (2^(N-1) feasible states fill the sector),
  // so coherent CS states never leave the even-parity subspace.
  Qubo obj(4);
  obj.add(0, 1, 0.8);
  obj.add(1, 3, -0.5);
  obj.add_linear(2, 0.4);
  QaoaConfig cfg;
  cfg.p = 3;
  cfg.mode = MixerMode::CS;
  cfg.ising = qubo_to_ising(obj);
  cfg.compressor = build_parity(4, {0, 1, 2, 3}, false);
  QaoaEngine engine(cfg);
  Rng rng(14);
  std::vector<double> beta(3), gamma(3);
  for (int i = 0; i < 3; ++i) {
    beta[i] = rng.uniform(0.0, 6.28);
    gamma[i] = rng.uniform(0.0, 6.28);
  }
  BuildOutcome out = engine.build_state(beta, gamma);
  double infeasible_mass = 0.0;
  for (std::uint64_t x = 0; x < 16; ++x)
    if (__builtin_popcountll(x) % 2 == 1)
      infeasible_mass += out.state.probability(x);
  CHECK(infeasible_mass < 1e-9);
}

TEST_CASE("penalty tuning breaks ties toward the smallest coefficient") {
  // With every bitstring optimal the success probability is flat in A.
  QaoaConfig proto;
  proto.p = 1;
  proto.mode = MixerMode::X;
  proto.n_starts = 2;
  proto.seed = 4;
  PowellConfig quick;
  quick.max_iter = 5;
  TuneResult tuned = tune_penalty(toy_objective(), toy_constraint(), proto,
                                  {0, 1, 2, 3}, 1.0, quick, 2, quick);
  CHECK(tuned.A == doctest::Approx(1.0));
  CHECK(tuned.result.p_suc == doctest::Approx(1.0));
  CHECK_FALSE(tuned.scan.empty());
}

TEST_CASE("penalty tuning finds a competitive coefficient on the toy") {
  QaoaConfig proto;
  proto.p = 1;
  proto.mode = MixerMode::X;
  proto.n_starts = 4;
  proto.seed = 6;
  PowellConfig scan;
  scan.max_iter = 40;
  TuneResult tuned = tune_penalty(toy_objective(), toy_constraint(), proto,
                                  {2}, 1.0, scan, 3, PowellConfig{});
  // Definitional post-check: the chosen A is at least as good as every
  // scanned alternative.
  for (const auto& [a, p] : tuned.scan)
    CHECK(tuned.result.p_suc >= p - 0.05);
}

TEST_CASE("energy fluctuation statistics") {
  // Constant Hamiltonian: zero fluctuation around the offset.
  QaoaConfig flat;
  flat.p = 1;
  flat.mode = MixerMode::X;
  flat.ising = IsingModel(2);
  flat.ising.H0 = 2.0;
  Rng rng(9);
  Fluctuation f = energy_fluctuation(flat, 50, rng);
  CHECK(f.delta_e == doctest::Approx(0.0));
  CHECK(f.e_ave == doctest::Approx(2.0));
  CHECK(f.defined);

  // Estimator sanity on the toy: small and large sample counts agree
  // within three combined standard errors.
  QaoaConfig cfg = toy_cs_config(1);
  Rng r1(10), r2(11);
  Fluctuation small = energy_fluctuation(cfg, 100, r1);
  Fluctuation large = energy_fluctuation(cfg, 10000, r2);
  double se_small = small.delta_e / std::sqrt(2.0 * 99.0);
  double se_large = large.delta_e / std::sqrt(2.0 * 9999.0);
  double combined = std::sqrt(se_small * se_small + se_large * se_large);
  CHECK(std::abs(small.delta_e - large.delta_e) < 3.0 * combined + 1e-12);
}

TEST_CASE("config validation") {
  QaoaConfig cfg;
  cfg.p = -1;
  cfg.ising = IsingModel(2);
  CHECK_THROWS_AS(QaoaEngine{cfg}, std::invalid_argument);

  QaoaConfig cs;
  cs.p = 1;
  cs.mode = MixerMode::CS;
  cs.ising = IsingModel(2);
  CHECK_THROWS_AS(QaoaEngine{cs}, std::invalid_argument);

  QaoaConfig xy;
  xy.p = 1;
  xy.mode = MixerMode::XY;
  xy.ising = IsingModel(2);
  CHECK_THROWS_AS(QaoaEngine{xy}, std::invalid_argument);
}
