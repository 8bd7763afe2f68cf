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

#include "csqaoa/qaoa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "csqaoa/noise.hpp"

namespace csqaoa {

namespace {

constexpr double kDiscardedEnergy = 1e300;

void check_config(const QaoaConfig& cfg) {
  if (cfg.p < 0) throw std::invalid_argument("layer count must be >= 0");
  if (cfg.mode == MixerMode::CS) {
    if (!cfg.compressor.has_value())
      throw std::invalid_argument("CS mode requires a compressor");
    if (cfg.compressor->n_qubits != cfg.ising.n)
      throw std::invalid_argument("compressor width does not match Ising model");
  }
  if (cfg.mode == MixerMode::XY && !cfg.global_xy && cfg.xy_blocks.empty())
    throw std::invalid_argument("XY mode requires mixer blocks");
}

std::vector<GateOp> phase_gates(const IsingModel& ising, double gamma) {
  std::vector<GateOp> gates;
  for (const auto& [ij, v] : ising.J)
    if (v != 0.0) gates.push_back(RotZZ{ij.first, ij.second, gamma * v});
  for (int i = 0; i < ising.n; ++i)
    if (ising.h[i] != 0.0) gates.push_back(RotZ{i, gamma * ising.h[i]});
  if (ising.H0 != 0.0) gates.push_back(GlobalPhase{-gamma * ising.H0});
  return gates;
}

}  // namespace

double success_probability(const Statevector& state,
                           const std::vector<std::uint64_t>& optima,
                           const std::vector<double>& layer_keep) {
  if (optima.empty()) throw std::invalid_argument("empty optima set");
  double keep = 1.0;
  for (double k : layer_keep) keep *= k;
  double overlap = 0.0;
  for (std::uint64_t x : optima) overlap += state.probability(x);
  return keep * overlap;
}

QaoaEngine::QaoaEngine(QaoaConfig config) : cfg_(std::move(config)) {
  check_config(cfg_);
  diag_ = cfg_.ising.diagonal();
}

Statevector QaoaEngine::prepare_initial() const {
  const int n = cfg_.ising.n;
  switch (cfg_.mode) {
    case MixerMode::X:
      return Statevector::uniform(n);
    case MixerMode::XY: {
      // Product of W states over the mixer blocks; uncovered qubits stay 0.
      std::vector<std::pair<std::uint64_t, double>> terms{{0, 1.0}};
      for (const auto& block : cfg_.xy_blocks) {
        std::vector<std::pair<std::uint64_t, double>> next;
        double a = 1.0 / std::sqrt(static_cast<double>(block.size()));
        for (const auto& [idx, amp] : terms)
          for (int q : block)
            next.emplace_back(idx | (std::uint64_t{1} << q), amp * a);
        terms = std::move(next);
      }
      Statevector s(n);
      for (const auto& [idx, amp] : terms) s.amps[idx] += amp;
      return s;
    }
    case MixerMode::CS: {
      const Compressor& u = *cfg_.compressor;
      Statevector s(n);
      const std::uint64_t count = std::uint64_t{1} << u.m();
      double a = 1.0 / std::sqrt(static_cast<double>(count));
      for (std::uint64_t q = 0; q < count; ++q) s.amps[u.sector_index(q)] = a;
      return s;
    }
  }
  throw std::logic_error("unreachable");
}

BuildOutcome QaoaEngine::build_state(const std::vector<double>& beta,
                                     const std::vector<double>& gamma) const {
  if (beta.size() != gamma.size() ||
      beta.size() != static_cast<std::size_t>(cfg_.p))
    throw std::invalid_argument("parameter count must equal the layer count");

  BuildOutcome out;
  out.state = prepare_initial();
  const int n = cfg_.ising.n;

  if (cfg_.mode == MixerMode::CS) {
    const Compressor& u = *cfg_.compressor;
    u.apply(out.state, true);  // decode: U_cs^dag on |0^(N-m)>|+^m>
    for (int layer = 0; layer < cfg_.p; ++layer) {
      apply_diagonal_phase(out.state, diag_, gamma[layer]);
      u.apply(out.state, false);
      Projection proj = project_zeros(out.state, u.zero_qubits);
      out.layer_keep.push_back(proj.prob_zero);
      if (proj.discarded) {
        out.fully_discarded = true;
        return out;
      }
      out.state = std::move(proj.state);
      for (int q : u.compressed_qubits)
        apply_gate(out.state, RotX{q, beta[layer]});
      u.apply(out.state, true);
    }
    return out;
  }

  for (int layer = 0; layer < cfg_.p; ++layer) {
    apply_diagonal_phase(out.state, diag_, gamma[layer]);
    if (cfg_.mode == MixerMode::X) {
      for (int q = 0; q < n; ++q) apply_gate(out.state, RotX{q, beta[layer]});
    } else if (cfg_.global_xy) {
      std::vector<int> all(n);
      for (int q = 0; q < n; ++q) all[q] = q;
      apply_gate(out.state, BlockXY{all, beta[layer]});
    } else {
      for (const auto& block : cfg_.xy_blocks)
        apply_gate(out.state, BlockXY{block, beta[layer]});
    }
  }
  return out;
}

Circuit QaoaEngine::gate_circuit(const std::vector<double>& beta,
                                 const std::vector<double>& gamma) const {
  if (beta.size() != gamma.size() ||
      beta.size() != static_cast<std::size_t>(cfg_.p))
    throw std::invalid_argument("parameter count must equal the layer count");
  Circuit c;
  const int n = cfg_.ising.n;

  if (cfg_.mode == MixerMode::CS) {
    const Compressor& u = *cfg_.compressor;
    Circuit enc = u.noisy_gates(false);
    Circuit dec = u.noisy_gates(true);
    c.append(dec);
    for (int layer = 0; layer < cfg_.p; ++layer) {
      for (auto& g : phase_gates(cfg_.ising, gamma[layer]))
        c.gates.push_back(std::move(g));
      c.append(enc);
      c.layer_marks.push_back(c.gates.size());
      for (int q : u.compressed_qubits)
        c.gates.push_back(RotX{q, beta[layer]});
      c.append(dec);
    }
    return c;
  }

  for (int layer = 0; layer < cfg_.p; ++layer) {
    for (auto& g : phase_gates(cfg_.ising, gamma[layer]))
      c.gates.push_back(std::move(g));
    if (cfg_.mode == MixerMode::X) {
      for (int q = 0; q < n; ++q) c.gates.push_back(RotX{q, beta[layer]});
    } else if (cfg_.global_xy) {
      std::vector<int> all(n);
      for (int q = 0; q < n; ++q) all[q] = q;
      c.gates.push_back(BlockXY{all, beta[layer]});
    } else {
      for (const auto& block : cfg_.xy_blocks)
        c.gates.push_back(BlockXY{block, beta[layer]});
    }
  }
  return c;
}

BuildOutcome QaoaEngine::run_trajectory(const std::vector<double>& beta,
                                        const std::vector<double>& gamma,
                                        Rng& rng) const {
  Circuit noisy = compile_to_noisy(gate_circuit(beta, gamma), cfg_.noise_eps);
  BuildOutcome out;
  out.state = prepare_initial();
  std::size_t gi = 0;
  for (std::size_t mark : noisy.layer_marks) {
    for (; gi < mark; ++gi) apply_gate(out.state, noisy.gates[gi], &rng);
    Projection proj = project_zeros(out.state, cfg_.compressor->zero_qubits);
    out.layer_keep.push_back(proj.prob_zero);
    if (proj.discarded) {
      out.fully_discarded = true;
      return out;
    }
    out.state = std::move(proj.state);
  }
  for (; gi < noisy.gates.size(); ++gi)
    apply_gate(out.state, noisy.gates[gi], &rng);
  return out;
}

QaoaMetrics QaoaEngine::evaluate(const std::vector<double>& beta,
                                 const std::vector<double>& gamma,
                                 const std::vector<std::uint64_t>& optima) const {
  QaoaMetrics m;
  if (cfg_.noise_eps == 0.0) {
    BuildOutcome out = build_state(beta, gamma);
    m.fully_discarded = out.fully_discarded;
    double keep = 1.0;
    for (double k : out.layer_keep) {
      m.layer_discards.push_back(1.0 - k);
      keep *= k;
    }
    if (out.fully_discarded) {
      m.p_dis = 1.0;
      m.energy = kDiscardedEnergy;
      return m;
    }
    m.p_dis = 1.0 - keep;
    m.energy = expectation_diagonal(out.state, diag_);
    if (!optima.empty())
      m.p_suc = success_probability(out.state, optima, out.layer_keep);
    return m;
  }

  // Trajectory-averaged metrics. Streams are forked from the config seed so
  // repeated evaluations see common random numbers.
  Rng base(cfg_.seed);
  const int T = cfg_.n_trajectories;
  double sum_keep = 0.0, sum_keep_energy = 0.0, sum_suc = 0.0;
  std::vector<double> sum_layer_keep;
  for (int t = 0; t < T; ++t) {
    Rng traj = base.fork(0xA000 + t);
    BuildOutcome out = run_trajectory(beta, gamma, traj);
    double keep = out.fully_discarded ? 0.0 : 1.0;
    for (std::size_t i = 0; i < out.layer_keep.size(); ++i) {
      if (sum_layer_keep.size() <= i) sum_layer_keep.push_back(0.0);
      sum_layer_keep[i] += out.layer_keep[i];
      keep *= out.layer_keep[i];
    }
    if (out.fully_discarded) continue;
    sum_keep += keep;
    sum_keep_energy += keep * expectation_diagonal(out.state, diag_);
    if (!optima.empty()) {
      double overlap = 0.0;
      for (std::uint64_t x : optima) overlap += out.state.probability(x);
      sum_suc += keep * overlap;
    }
  }
  m.p_dis = 1.0 - sum_keep / T;
  m.p_suc = sum_suc / T;
  for (double s : sum_layer_keep) m.layer_discards.push_back(1.0 - s / T);
  if (sum_keep <= 0.0) {
    m.fully_discarded = true;
    m.energy = kDiscardedEnergy;
  } else {
    m.energy = sum_keep_energy / sum_keep;
  }
  return m;
}

double QaoaEngine::objective(const std::vector<double>& params) const {
  const int p = cfg_.p;
  std::vector<double> beta(params.begin(), params.begin() + p);
  std::vector<double> gamma(params.begin() + p, params.end());
  if (cfg_.noise_eps == 0.0 || !cfg_.optimize_under_noise) {
    BuildOutcome out = build_state(beta, gamma);
    if (out.fully_discarded) return kDiscardedEnergy;
    return expectation_diagonal(out.state, diag_);
  }
  QaoaMetrics m = evaluate(beta, gamma, {});
  return m.energy;
}

QaoaResult optimize_qaoa(const QaoaConfig& config,
                         const std::vector<std::uint64_t>& optima,
                         const PowellConfig& powell) {
  if (config.p < 1) throw std::invalid_argument("optimization needs p >= 1");
  QaoaEngine engine(config);
  const int p = config.p;
  Rng base(config.seed);

  QaoaResult best;
  best.energy = std::numeric_limits<double>::infinity();
  best.seed = config.seed;

  for (int s = 0; s < config.n_starts; ++s) {
    std::vector<double> x0(2 * p, 0.0);
    if (s > 0) {
      Rng sr = base.fork(500 + s);
      for (double& v : x0) v = sr.uniform(0.0, config.random_start_span);
    }
    PowellResult res = powell_minimize(
        [&engine](const std::vector<double>& x) { return engine.objective(x); },
        x0, powell);
    best.start_trace.emplace_back(res.f, res.evaluations);
    best.evaluations += res.evaluations;
    if (res.f < best.energy) {
      best.energy = res.f;
      best.beta.assign(res.x.begin(), res.x.begin() + p);
      best.gamma.assign(res.x.begin() + p, res.x.end());
    }
  }
  if (best.energy >= kDiscardedEnergy)
    throw std::runtime_error("every optimizer start was fully discarded");

  QaoaMetrics m = engine.evaluate(best.beta, best.gamma, optima);
  best.energy = m.energy;
  best.p_suc = m.p_suc;
  best.p_dis = m.p_dis;
  best.layer_discards = m.layer_discards;
  return best;
}

TuneResult tune_penalty(const Qubo& objective, const Qubo& constraint,
                        const QaoaConfig& proto,
                        const std::vector<std::uint64_t>& optima,
                        double precision, const PowellConfig& scan_powell,
                        int scan_starts, const PowellConfig& final_powell) {
  if (precision <= 0.0) throw std::invalid_argument("precision must be positive");

  std::map<double, double> cache;  // A -> p_suc under the scan budget
  std::vector<std::pair<double, double>> scan_log;
  auto p_suc_at = [&](double A) {
    A = std::max(A, precision);
    auto it = cache.find(A);
    if (it != cache.end()) return it->second;
    QaoaConfig cfg = proto;
    cfg.ising = assemble(objective, constraint, A).ising;
    cfg.n_starts = scan_starts;
    QaoaResult r = optimize_qaoa(cfg, optima, scan_powell);
    cache[A] = r.p_suc;
    scan_log.emplace_back(A, r.p_suc);
    return r.p_suc;
  };

  // Geometric coarse scan, then a shrinking bracket around the best point.
  double best_a = precision;
  double best_p = -1.0;
  auto consider = [&](double A) {
    A = std::max(A, precision);
    double p = p_suc_at(A);
    if (p > best_p + 1e-12) {
      best_p = p;
      best_a = A;
    } else if (p > best_p - 1e-12 && A < best_a) {
      best_a = A;  // ties toward smaller A
    }
  };
  for (int k = 0; k < 7; ++k) consider(precision * static_cast<double>(1 << k));

  double lo = std::max(precision, best_a / 2.0);
  double hi = best_a * 2.0;
  while (hi - lo > precision) {
    double span = hi - lo;
    for (int i = 0; i <= 4; ++i) consider(lo + span * i / 4.0);
    lo = std::max(precision, best_a - span / 4.0);
    hi = best_a + span / 4.0;
  }

  TuneResult out;
  out.A = best_a;
  out.scan = std::move(scan_log);
  QaoaConfig cfg = proto;
  cfg.ising = assemble(objective, constraint, best_a).ising;
  out.result = optimize_qaoa(cfg, optima, final_powell);
  return out;
}

Fluctuation energy_fluctuation(const QaoaConfig& config, int n_samples,
                               Rng& rng) {
  if (n_samples < 2) throw std::invalid_argument("need at least two samples");
  QaoaConfig coherent = config;
  coherent.noise_eps = 0.0;
  QaoaEngine engine(coherent);

  std::vector<double> energies;
  energies.reserve(n_samples);
  const double two_pi = 6.283185307179586;
  for (int i = 0; i < n_samples; ++i) {
    std::vector<double> beta(config.p), gamma(config.p);
    for (double& b : beta) b = rng.uniform(0.0, two_pi);
    for (double& g : gamma) g = rng.uniform(0.0, two_pi);
    BuildOutcome out = engine.build_state(beta, gamma);
    if (out.fully_discarded) continue;
    energies.push_back(expectation_diagonal(out.state, engine.diagonal()));
  }
  if (energies.size() < 2)
    throw std::runtime_error("too few kept samples for a fluctuation estimate");

  Fluctuation f;
  double mean = 0.0;
  for (double e : energies) mean += e;
  mean /= static_cast<double>(energies.size());
  double var = 0.0;
  for (double e : energies) var += (e - mean) * (e - mean);
  var /= static_cast<double>(energies.size() - 1);
  f.e_ave = mean;
  f.delta_e = std::sqrt(var);
  if (mean == 0.0) {
    f.defined = false;
    f.ratio = 0.0;
  } else {
    f.ratio = f.delta_e / f.e_ave;
  }
  return f;
}

}  // namespace csqaoa
