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

#include "csqaoa/experiments.hpp"

#include "csqaoa/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace csqaoa {

namespace {

int ceil_log2(std::uint64_t x) {
  int m = 0;
  while ((std::uint64_t{1} << m) < x) ++m;
  return m;
}

std::uint64_t combine_seeds(std::uint64_t a, std::uint64_t b) {
  return Rng::splitmix(a ^ Rng::splitmix(b));
}

ConstraintSpec qkp_constraint(const Qkp& qkp) {
  std::vector<int> vars(qkp.n_items);
  for (int i = 0; i < qkp.n_items; ++i) vars[i] = i;
  return ConstraintSpec::weighted_upper(vars, qkp.weights, qkp.capacity);
}

}  // namespace

ProblemSetup setup_problem(CopInstance instance, std::uint64_t seed,
                           const std::string& label) {
  ProblemSetup s;
  s.enc = encode(instance);
  s.oracle = brute_force(instance);
  s.instance = std::move(instance);
  s.seed = seed;
  s.label = label.empty() ? ("seed" + std::to_string(seed)) : label;
  return s;
}

std::vector<ProblemSetup> maxkcut_suite(int n_vertices, int k, int count,
                                        std::uint64_t seed) {
  std::vector<ProblemSetup> out;
  for (int i = 0; i < count; ++i) {
    std::uint64_t s = combine_seeds(seed, i);
    out.push_back(setup_problem(gen_maxkcut(n_vertices, k, s), s,
                                "g" + std::to_string(i)));
  }
  return out;
}

std::vector<ProblemSetup> qap_suite(int n_f, int count, std::uint64_t seed) {
  std::vector<ProblemSetup> out;
  for (int i = 0; i < count; ++i) {
    std::uint64_t s = combine_seeds(seed, i);
    out.push_back(
        setup_problem(gen_qap(n_f, s), s, "q" + std::to_string(i)));
  }
  return out;
}

std::vector<ProblemSetup> qkp_suite(int n_i, int count, std::uint64_t seed,
                                    const std::vector<QkpBenchmark>& benches) {
  std::vector<ProblemSetup> out;
  if (!benches.empty()) {
    for (const auto& bench : benches) {
      if (static_cast<int>(out.size()) == count) break;
      ProblemSetup s = setup_problem(derive_qkp(bench, n_i),
                                     combine_seeds(seed, out.size()),
                                     bench.name);
      if (s.oracle.p_feasible >= 0.1 && s.oracle.p_feasible <= 0.5)
        out.push_back(std::move(s));
    }
    if (static_cast<int>(out.size()) < count)
      throw std::runtime_error(
          "not enough benchmark instances pass the feasible-ratio filter");
    return out;
  }
  // Synthetic benchmarks, filtered the same way.
  std::uint64_t trial = 0;
  while (static_cast<int>(out.size()) < count) {
    std::uint64_t s = combine_seeds(seed, 10000 + trial);
    ++trial;
    if (trial > 10000)
      throw std::runtime_error("could not generate filtered knapsack instances");
    QkpBenchmark bench = gen_qkp_benchmark(
        "syn_" + std::to_string(trial), std::max(10, 2 * n_i), 0.35, s);
    ProblemSetup setup = setup_problem(derive_qkp(bench, n_i), s, bench.name);
    if (setup.oracle.p_feasible < 0.1 || setup.oracle.p_feasible > 0.5)
      continue;
    if (setup.oracle.optimal_value >= 0.0) continue;  // degenerate: no profit
    out.push_back(std::move(setup));
  }
  return out;
}

std::string mode_name(RunMode mode) {
  switch (mode) {
    case RunMode::XMixer: return "x";
    case RunMode::XYMixer: return "xy";
    case RunMode::CsDeterministic: return "cs";
    case RunMode::CsBinary: return "cs-binary";
    case RunMode::CsBinaryParity: return "cs-binary-parity";
    case RunMode::CsAnsatzC: return "cs-ansatz-c";
    case RunMode::CsAnsatzD: return "cs-ansatz-d";
  }
  return "?";
}

RunMode mode_from_name(const std::string& name) {
  if (name == "x") return RunMode::XMixer;
  if (name == "xy") return RunMode::XYMixer;
  if (name == "cs") return RunMode::CsDeterministic;
  if (name == "cs-binary") return RunMode::CsBinary;
  if (name == "cs-binary-parity") return RunMode::CsBinaryParity;
  if (name == "cs-ansatz-c") return RunMode::CsAnsatzC;
  if (name == "cs-ansatz-d") return RunMode::CsAnsatzD;
  throw std::invalid_argument("unknown mode: " + name);
}

Compressor deterministic_compressor(const ProblemSetup& problem, RunMode mode) {
  const int n = problem.enc.layout.n_qubits;
  switch (mode) {
    case RunMode::CsDeterministic: {
      if (!std::holds_alternative<MaxKCut>(problem.instance))
        throw std::invalid_argument("mode cs expects a Max-k cut instance");
      Compressor acc = Compressor::identity(n);
      for (const auto& group : problem.enc.layout.onehot_groups())
        acc = compose(acc, build_onehot_binary(n, group));
      return acc;
    }
    case RunMode::CsBinary:
    case RunMode::CsBinaryParity: {
      const auto* qap = std::get_if<Qap>(&problem.instance);
      if (qap == nullptr)
        throw std::invalid_argument("QAP encodings expect a QAP instance");
      return build_qap_compressor(qap->n_f, mode == RunMode::CsBinary
                                                ? QapEncoding::Binary
                                                : QapEncoding::BinaryParity);
    }
    default:
      throw std::invalid_argument("mode has no deterministic compressor");
  }
}

namespace {

QaoaConfig base_config(const ProblemSetup& problem, RunMode mode,
                       const RunSettings& settings) {
  QaoaConfig cfg;
  cfg.p = settings.p;
  cfg.n_starts = settings.n_starts;
  cfg.noise_eps = settings.noise_eps;
  cfg.n_trajectories = settings.n_trajectories;
  cfg.seed = combine_seeds(settings.seed, problem.seed);
  cfg.random_start_span = settings.random_start_span;
  switch (mode) {
    case RunMode::XMixer:
      cfg.mode = MixerMode::X;
      break;
    case RunMode::XYMixer:
      cfg.mode = MixerMode::XY;
      cfg.xy_blocks = problem.enc.layout.onehot_groups();
      if (cfg.xy_blocks.empty())
        throw std::invalid_argument("XY mixer needs one-hot variable groups");
      break;
    default:
      cfg.mode = MixerMode::CS;
      break;
  }
  return cfg;
}

struct TunedRun {
  double A = 0.0;
  QaoaResult result;
};

TunedRun tune_or_run(const ProblemSetup& problem, QaoaConfig cfg,
                     const RunSettings& settings) {
  TunedRun out;
  if (settings.fixed_A >= 0.0) {
    out.A = settings.fixed_A;
    cfg.ising =
        assemble(problem.enc.objective, problem.enc.constraint, out.A).ising;
    out.result = optimize_qaoa(cfg, problem.oracle.optima, settings.powell);
  } else {
    TuneResult tuned = tune_penalty(
        problem.enc.objective, problem.enc.constraint, cfg,
        problem.oracle.optima, settings.precision, settings.scan_powell,
        settings.scan_starts, settings.powell);
    out.A = tuned.A;
    out.result = std::move(tuned.result);
  }
  return out;
}

}  // namespace

RunRow run_point(const ProblemSetup& problem, RunMode mode,
                 const RunSettings& settings) {
  RunRow row;
  row.problem = problem_name(problem.instance);
  row.instance_label = problem.label;
  row.size = problem_size(problem.instance);
  row.mode = mode_name(mode);
  row.p = settings.p;
  row.seed = combine_seeds(settings.seed, problem.seed);

  const bool trained =
      mode == RunMode::CsAnsatzC || mode == RunMode::CsAnsatzD;

  if (!trained) {
    QaoaConfig cfg = base_config(problem, mode, settings);
    if (cfg.mode == MixerMode::CS)
      cfg.compressor = deterministic_compressor(problem, mode);
    TunedRun run = tune_or_run(problem, cfg, settings);
    row.A = run.A;
    row.p_suc = run.result.p_suc;
    row.p_dis = run.result.p_dis;
    row.energy = run.result.energy;
    return row;
  }

  const auto* qkp = std::get_if<Qkp>(&problem.instance);
  if (qkp == nullptr)
    throw std::invalid_argument("trained CS modes expect a knapsack instance");
  const int n = problem.enc.layout.n_qubits;
  ConstraintSpec constraint = qkp_constraint(*qkp);
  std::vector<std::uint64_t> feasible = enumerate_feasible(problem.instance);
  int m = std::max(1, ceil_log2(feasible.size()));
  if (m >= n)
    throw std::invalid_argument(
        "instance admits no compression (feasible ratio above one half)");

  AnsatzKind kind = mode == RunMode::CsAnsatzC ? AnsatzKind::C : AnsatzKind::D;
  Rng base(combine_seeds(settings.seed, problem.seed));

  // Database records for the same constraint are reused before training.
  std::vector<CompressorRecord> cached =
      matching_records(settings.compressor_db, constraint, n);
  std::erase_if(cached, [&](const CompressorRecord& r) {
    return r.ansatz != (kind == AnsatzKind::C ? "C" : "D") || r.m != m;
  });

  std::vector<TrainResult> samples;
  for (int s = 0; s < settings.n_compressor_samples; ++s) {
    if (s < static_cast<int>(cached.size())) {
      TrainResult t;
      t.compressor = compressor_from_record(cached[s]);
      t.p_sur = cached[s].p_sur;
      t.layers = cached[s].layers;
      t.met_threshold = true;
      samples.push_back(std::move(t));
      continue;
    }
    Rng hr = base.fork(300 + s);
    CompressedHamiltonian h = build_hcs(n, constraint, hr);
    Rng tr = base.fork(400 + s);
    TrainResult t =
        train_with_escalation(kind, h, feasible, m, settings.train_budget, tr);
    if (!t.met_threshold)
      throw TrainingThresholdError("compressor training failed survival threshold");
    samples.push_back(std::move(t));
  }

  // Tune A once with the first sample, reuse for all of them.
  QaoaConfig cfg = base_config(problem, mode, settings);
  cfg.compressor = samples[0].compressor;
  TunedRun first = tune_or_run(problem, cfg, settings);
  row.A = first.A;

  struct SampleOutcome {
    double p_suc, p_dis, energy, p_sur;
  };
  std::vector<SampleOutcome> outcomes;
  outcomes.push_back({first.result.p_suc, first.result.p_dis,
                      first.result.energy, samples[0].p_sur});
  IsingModel tuned_ising =
      assemble(problem.enc.objective, problem.enc.constraint, row.A).ising;
  for (std::size_t s = 1; s < samples.size(); ++s) {
    QaoaConfig c = base_config(problem, mode, settings);
    c.compressor = samples[s].compressor;
    c.ising = tuned_ising;
    QaoaResult r = optimize_qaoa(c, problem.oracle.optima, settings.powell);
    outcomes.push_back({r.p_suc, r.p_dis, r.energy, samples[s].p_sur});
  }

  std::vector<std::size_t> order(outcomes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return outcomes[a].p_suc < outcomes[b].p_suc;
  });
  std::size_t median = order[order.size() / 2];

  row.p_suc = outcomes[median].p_suc;
  row.p_dis = outcomes[median].p_dis;
  row.energy = outcomes[median].energy;
  row.p_sur = outcomes[median].p_sur;
  for (const auto& o : outcomes) row.sample_p_suc.push_back(o.p_suc);
  return row;
}

std::vector<RunRow> run_suite(const std::vector<ProblemSetup>& problems,
                              const std::vector<RunMode>& modes,
                              const RunSettings& settings, int jobs) {
  struct Task {
    const ProblemSetup* problem;
    RunMode mode;
  };
  std::vector<Task> tasks;
  for (const auto& p : problems)
    for (RunMode m : modes) tasks.push_back({&p, m});

  std::vector<RunRow> rows(tasks.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i)
      rows[i] = run_point(*tasks[i].problem, tasks[i].mode, settings);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      rows[i] = run_point(*tasks[i].problem, tasks[i].mode, settings);
    }
  };
  std::vector<std::future<void>> futures;
  for (int j = 0; j < jobs; ++j)
    futures.push_back(std::async(std::launch::async, worker));
  for (auto& f : futures) f.get();
  return rows;
}

std::vector<AggregateRow> aggregate(const std::vector<RunRow>& rows) {
  std::vector<AggregateRow> out;
  std::map<std::string, std::size_t> index;
  std::map<std::string, std::vector<double>> sucs;
  for (const auto& r : rows) {
    std::ostringstream key;
    key << r.problem << "|" << r.size << "|" << r.mode << "|" << r.p;
    auto [it, fresh] = index.try_emplace(key.str(), out.size());
    if (fresh) {
      AggregateRow agg;
      agg.problem = r.problem;
      agg.size = r.size;
      agg.mode = r.mode;
      agg.p = r.p;
      out.push_back(agg);
    }
    AggregateRow& agg = out[it->second];
    ++agg.count;
    agg.p_suc_mean += r.p_suc;
    agg.p_dis_mean += r.p_dis;
    sucs[key.str()].push_back(r.p_suc);
  }
  for (auto& [key, idx] : index) {
    AggregateRow& agg = out[idx];
    agg.p_suc_mean /= agg.count;
    agg.p_dis_mean /= agg.count;
    const auto& v = sucs[key];
    if (v.size() > 1) {
      double var = 0.0;
      for (double s : v) var += (s - agg.p_suc_mean) * (s - agg.p_suc_mean);
      agg.p_suc_std = std::sqrt(var / (v.size() - 1));
    }
  }
  return out;
}

std::vector<NoiseRow> sweep_noise(const ProblemSetup& problem, RunMode mode,
                                  const RunSettings& settings,
                                  const std::vector<double>& eps_list) {
  RunSettings coherent = settings;
  coherent.noise_eps = 0.0;

  QaoaConfig cfg = base_config(problem, mode, coherent);
  if (cfg.mode == MixerMode::CS) {
    if (mode == RunMode::CsAnsatzC || mode == RunMode::CsAnsatzD) {
      const auto* qkp = std::get_if<Qkp>(&problem.instance);
      if (qkp == nullptr)
        throw std::invalid_argument("trained CS modes expect a knapsack instance");
      ConstraintSpec constraint = qkp_constraint(*qkp);
      std::vector<std::uint64_t> feasible = enumerate_feasible(problem.instance);
      int m = std::max(1, ceil_log2(feasible.size()));
      AnsatzKind kind =
          mode == RunMode::CsAnsatzC ? AnsatzKind::C : AnsatzKind::D;
      std::vector<CompressorRecord> cached =
          matching_records(settings.compressor_db, constraint,
                           problem.enc.layout.n_qubits);
      std::erase_if(cached, [&](const CompressorRecord& r) {
        return r.ansatz != (kind == AnsatzKind::C ? "C" : "D") || r.m != m;
      });
      if (!cached.empty()) {
        cfg.compressor = compressor_from_record(cached.front());
      } else {
        Rng base(combine_seeds(settings.seed, problem.seed));
        Rng hr = base.fork(300);
        CompressedHamiltonian h =
            build_hcs(problem.enc.layout.n_qubits, constraint, hr);
        Rng tr = base.fork(400);
        TrainResult t = train_with_escalation(kind, h, feasible, m,
                                              settings.train_budget, tr);
        if (!t.met_threshold)
          throw TrainingThresholdError(
              "compressor training failed survival threshold");
        cfg.compressor = std::move(t.compressor);
      }
    } else {
      cfg.compressor = deterministic_compressor(problem, mode);
    }
  }
  TunedRun tuned = tune_or_run(problem, cfg, coherent);
  cfg.ising =
      assemble(problem.enc.objective, problem.enc.constraint, tuned.A).ising;

  std::vector<NoiseRow> rows;
  for (double eps : eps_list) {
    QaoaConfig noisy = cfg;
    noisy.noise_eps = eps;
    noisy.n_trajectories = settings.n_trajectories;
    QaoaEngine engine(noisy);
    QaoaMetrics m = engine.evaluate(tuned.result.beta, tuned.result.gamma,
                                    problem.oracle.optima);
    NoiseRow row;
    row.problem = problem_name(problem.instance);
    row.instance_label = problem.label;
    row.mode = mode_name(mode);
    row.p = settings.p;
    row.eps = eps;
    row.A = tuned.A;
    row.p_suc = m.p_suc;
    row.p_dis = m.p_dis;
    row.p_suc_normalized = m.p_dis < 1.0 ? m.p_suc / (1.0 - m.p_dis) : 0.0;
    row.n_trajectories = eps == 0.0 ? 1 : settings.n_trajectories;
    rows.push_back(row);
  }
  return rows;
}

FluctuationRow fluctuation_point(const ProblemSetup& problem, RunMode mode,
                                 int p, double A, int n_samples,
                                 std::uint64_t seed) {
  RunSettings settings;
  settings.p = p;
  settings.seed = seed;
  QaoaConfig cfg = base_config(problem, mode, settings);
  if (cfg.mode == MixerMode::CS)
    cfg.compressor = deterministic_compressor(problem, mode);
  cfg.ising = assemble(problem.enc.objective, problem.enc.constraint, A).ising;

  Rng rng(combine_seeds(seed, problem.seed));
  Fluctuation f = energy_fluctuation(cfg, n_samples, rng);

  FluctuationRow row;
  row.problem = problem_name(problem.instance);
  row.instance_label = problem.label;
  row.mode = mode_name(mode);
  row.p = p;
  row.n_samples = n_samples;
  row.delta_e = f.delta_e;
  row.e_ave = f.e_ave;
  row.ratio = f.defined ? f.ratio : std::nan("");
  return row;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (std::size_t i = 0; i < header.size(); ++i)
    out << header[i] << (i + 1 < header.size() ? "," : "\n");
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i)
      out << row[i] << (i + 1 < row.size() ? "," : "\n");
}

std::vector<std::string> run_row_header() {
  return {"problem", "instance", "size", "mode", "p", "A",
          "p_suc",   "p_dis",    "energy", "p_sur", "seed"};
}

std::vector<std::string> to_csv_row(const RunRow& r) {
  return {r.problem,
          r.instance_label,
          std::to_string(r.size),
          r.mode,
          std::to_string(r.p),
          format_number(r.A),
          format_number(r.p_suc),
          format_number(r.p_dis),
          format_number(r.energy),
          format_number(r.p_sur),
          std::to_string(r.seed)};
}

std::vector<std::string> aggregate_header() {
  return {"problem", "size", "mode", "p", "count", "p_suc_mean", "p_suc_std",
          "p_dis_mean"};
}

std::vector<std::string> to_csv_row(const AggregateRow& r) {
  return {r.problem,
          std::to_string(r.size),
          r.mode,
          std::to_string(r.p),
          std::to_string(r.count),
          format_number(r.p_suc_mean),
          format_number(r.p_suc_std),
          format_number(r.p_dis_mean)};
}

std::vector<std::string> noise_row_header() {
  return {"problem", "instance", "mode", "p", "eps", "A",
          "p_suc",   "p_dis",    "p_suc_normalized", "n_trajectories"};
}

std::vector<std::string> to_csv_row(const NoiseRow& r) {
  return {r.problem,
          r.instance_label,
          r.mode,
          std::to_string(r.p),
          format_number(r.eps),
          format_number(r.A),
          format_number(r.p_suc),
          format_number(r.p_dis),
          format_number(r.p_suc_normalized),
          std::to_string(r.n_trajectories)};
}

std::vector<std::string> fluctuation_header() {
  return {"problem", "instance", "mode", "p", "n_samples", "delta_e", "e_ave",
          "ratio"};
}

std::vector<std::string> to_csv_row(const FluctuationRow& r) {
  return {r.problem,
          r.instance_label,
          r.mode,
          std::to_string(r.p),
          std::to_string(r.n_samples),
          format_number(r.delta_e),
          format_number(r.e_ave),
          format_number(r.ratio)};
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void write_meta(const std::string& path, const std::string& config_text,
                std::uint64_t seed, double wall_seconds,
                const std::string& notes) {
  nlohmann::json j;
  j["version"] = kVersion;
  j["config"] = config_text;
  char hash[24];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(fnv1a(config_text)));
  j["config_hash"] = hash;
  j["seed"] = seed;
  j["wall_seconds"] = wall_seconds;
  if (!notes.empty()) j["notes"] = notes;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace csqaoa
