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

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <optional>

#include "CLI11.hpp"
#include "config.hpp"
#include "csqaoa/errors.hpp"
#include "csqaoa/experiments.hpp"

namespace fs = std::filesystem;
using namespace csqaoa;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitTraining = 3;
constexpr int kExitSizeCap = 4;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;  // 0 = use the config's seed
  int jobs = 1;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

RunSettings settings_from(const Config& cfg, std::uint64_t seed_override) {
  RunSettings s;
  s.p = static_cast<int>(cfg.get_int("p", 5));
  s.precision = cfg.get_number("precision", 1.0);
  s.fixed_A = cfg.get_number("A", -1.0);
  s.n_starts = static_cast<int>(cfg.get_int("starts", 11));
  s.scan_starts = static_cast<int>(cfg.get_int("scan_starts", 3));
  s.powell.ftol = cfg.get_number("ftol", 0.001);
  s.powell.max_iter = static_cast<int>(cfg.get_int("powell_max_iter", 1000));
  s.scan_powell.max_iter =
      static_cast<int>(cfg.get_int("scan_powell_max_iter", 30));
  s.noise_eps = cfg.get_number("eps", 0.0);
  s.n_trajectories = static_cast<int>(cfg.get_int("trajectories", 10));
  s.n_compressor_samples =
      static_cast<int>(cfg.get_int("compressor_samples", 5));
  s.train_budget.layers = static_cast<int>(cfg.get_int("layers", 1));
  s.train_budget.n_rep = static_cast<int>(cfg.get_int("n_rep", 10));
  s.train_budget.sa.n_loop = static_cast<int>(cfg.get_int("n_loop", 1000));
  s.train_budget.sa.t_initial = cfg.get_number("T_i", 10.0);
  s.train_budget.sa.t_final = cfg.get_number("T_f", 0.1);
  s.random_start_span =
      cfg.get_number("start_span", 6.283185307179586);
  for (const auto& path : cfg.get_strings("compressor_db", {})) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open compressor database: " + path);
    std::ostringstream body;
    body << in.rdbuf();
    for (auto& rec : records_from_json(body.str()))
      s.compressor_db.push_back(std::move(rec));
  }
  s.seed = cfg.get_u64("seed", 1);
  if (seed_override != 0) s.seed = seed_override;
  return s;
}

std::vector<ProblemSetup> problems_from(const Config& cfg,
                                        const RunSettings& settings) {
  const std::string problem = cfg.get_string("problem");
  const int count = static_cast<int>(
      cfg.get_int("count", problem == "qkp" ? 6 : 10));
  std::vector<ProblemSetup> problems;
  if (problem == "maxkcut") {
    int vertices = static_cast<int>(cfg.get_int("vertices", 4));
    int k = static_cast<int>(cfg.get_int("k", 3));
    problems = maxkcut_suite(vertices, k, count, settings.seed);
  } else if (problem == "qap") {
    int n_f = static_cast<int>(cfg.get_int("n_f", 3));
    problems = qap_suite(n_f, count, settings.seed);
  } else if (problem == "qkp") {
    int n_i = static_cast<int>(cfg.get_int("items", 4));
    std::vector<QkpBenchmark> benches;
    for (const auto& path : cfg.get_strings("benchmarks", {}))
      benches.push_back(load_qkp(path));
    problems = qkp_suite(n_i, count, settings.seed, benches);
  } else {
    throw ConfigError("unknown problem kind: " + problem);
  }
  return problems;
}

std::vector<RunMode> modes_from(const Config& cfg) {
  std::vector<RunMode> modes;
  for (const auto& name : cfg.get_strings("modes", {"cs", "x"}))
    modes.push_back(mode_from_name(name));
  if (modes.empty()) throw ConfigError("empty mode list");
  return modes;
}

int cmd_run_qaoa(const CommonArgs& args) {
  auto t0 = std::chrono::steady_clock::now();
  Config cfg = Config::parse_file(args.config_path);
  RunSettings settings = settings_from(cfg, args.seed);
  std::vector<ProblemSetup> problems = problems_from(cfg, settings);
  std::vector<RunMode> modes = modes_from(cfg);

  std::vector<RunRow> rows = run_suite(problems, modes, settings, args.jobs);

  fs::create_directories(args.out_dir);
  std::vector<std::vector<std::string>> csv_rows;
  for (const auto& r : rows) csv_rows.push_back(to_csv_row(r));
  write_csv((fs::path(args.out_dir) / "results.csv").string(),
            run_row_header(), csv_rows);

  std::vector<std::vector<std::string>> agg_rows;
  for (const auto& a : aggregate(rows)) agg_rows.push_back(to_csv_row(a));
  write_csv((fs::path(args.out_dir) / "aggregate.csv").string(),
            aggregate_header(), agg_rows);

  write_meta((fs::path(args.out_dir) / "results.meta.json").string(),
             cfg.text(), settings.seed, seconds_since(t0));
  std::cout << "wrote " << rows.size() << " rows to " << args.out_dir
            << "/results.csv\n";
  return kExitOk;
}

int cmd_train_compressor(const CommonArgs& args) {
  auto t0 = std::chrono::steady_clock::now();
  Config cfg = Config::parse_file(args.config_path);
  const int n = static_cast<int>(cfg.get_int("N", 3));
  std::uint64_t seed = cfg.get_u64("seed", 1);
  if (args.seed != 0) seed = args.seed;

  ConstraintSpec spec;
  const std::string kind = cfg.get_string("constraint", "sum-range");
  std::vector<int> vars(n);
  for (int i = 0; i < n; ++i) vars[i] = i;
  if (kind == "sum-range") {
    spec = ConstraintSpec::sum_range(vars, cfg.get_number("lower", 0.0),
                                     cfg.get_number("upper", 1.0));
  } else if (kind == "weighted-upper") {
    spec = ConstraintSpec::weighted_upper(vars, cfg.get_numbers("weights"),
                                          cfg.get_number("capacity"));
  } else if (kind == "one-hot") {
    spec = ConstraintSpec::one_hot(vars);
  } else if (kind == "parity-even" || kind == "parity-odd") {
    spec = ConstraintSpec::parity(vars, kind == "parity-odd");
  } else {
    throw ConfigError("unknown constraint kind: " + kind);
  }

  std::vector<std::uint64_t> feasible = enumerate_feasible(n, spec);
  if (feasible.empty()) throw ConfigError("constraint has no feasible state");
  int m = static_cast<int>(cfg.get_int("m", 0));
  if (m <= 0) {
    m = 1;
    while ((std::uint64_t{1} << m) < feasible.size()) ++m;
  }
  if (m >= n) throw ConfigError("m must be smaller than N");

  AnsatzKind ansatz =
      cfg.get_string("ansatz", "D") == "C" ? AnsatzKind::C : AnsatzKind::D;
  TrainBudget budget;
  budget.layers = static_cast<int>(cfg.get_int("layers", 1));
  budget.n_rep = static_cast<int>(cfg.get_int("n_rep", 10));
  budget.sa.n_loop = static_cast<int>(cfg.get_int("n_loop", 1000));
  budget.sa.t_initial = cfg.get_number("T_i", 10.0);
  budget.sa.t_final = cfg.get_number("T_f", 0.1);

  const int samples = static_cast<int>(cfg.get_int("samples", 1));
  std::vector<CompressorRecord> records;
  bool any_failed = false;
  Rng base(seed);
  for (int s = 0; s < samples; ++s) {
    Rng hr = base.fork(300 + s);
    CompressedHamiltonian h = build_hcs(n, spec, hr);
    Rng tr = base.fork(400 + s);
    TrainResult t = train_with_escalation(ansatz, h, feasible, m, budget, tr);
    any_failed = any_failed || !t.met_threshold;
    records.push_back(make_record(spec, t, ansatz, n, feasible, seed));
  }

  fs::create_directories(args.out_dir);
  fs::path out = fs::path(args.out_dir) / "compressors.json";
  std::ofstream os(out);
  os << records_to_json(records) << "\n";
  write_meta((fs::path(args.out_dir) / "compressors.meta.json").string(),
             cfg.text(), seed, seconds_since(t0));
  std::cout << "wrote " << records.size() << " records to " << out.string()
            << "\n";
  if (any_failed) {
    std::cerr << "training threshold unmet; records flagged failed\n";
    return kExitTraining;
  }
  return kExitOk;
}

int cmd_sweep_noise(const CommonArgs& args) {
  auto t0 = std::chrono::steady_clock::now();
  Config cfg = Config::parse_file(args.config_path);
  RunSettings settings = settings_from(cfg, args.seed);
  std::vector<ProblemSetup> problems = problems_from(cfg, settings);
  std::vector<RunMode> modes = modes_from(cfg);
  std::vector<double> eps_list = cfg.get_numbers("eps_list");

  std::vector<std::vector<std::string>> csv_rows;
  for (const auto& problem : problems)
    for (RunMode mode : modes)
      for (const auto& row : sweep_noise(problem, mode, settings, eps_list))
        csv_rows.push_back(to_csv_row(row));

  fs::create_directories(args.out_dir);
  write_csv((fs::path(args.out_dir) / "noise.csv").string(),
            noise_row_header(), csv_rows);
  write_meta((fs::path(args.out_dir) / "noise.meta.json").string(), cfg.text(),
             settings.seed, seconds_since(t0));
  std::cout << "wrote " << csv_rows.size() << " rows to " << args.out_dir
            << "/noise.csv\n";
  return kExitOk;
}

int cmd_gen_instances(const CommonArgs& args) {
  Config cfg = Config::parse_file(args.config_path);
  const std::string problem = cfg.get_string("problem");
  const int count = static_cast<int>(cfg.get_int("count", 10));
  std::uint64_t seed = cfg.get_u64("seed", 1);
  if (args.seed != 0) seed = args.seed;

  fs::create_directories(args.out_dir);
  Rng base(seed);
  for (int i = 0; i < count; ++i) {
    std::uint64_t s = base.fork(i).seed();
    fs::path path;
    if (problem == "maxkcut") {
      int vertices = static_cast<int>(cfg.get_int("vertices", 4));
      int k = static_cast<int>(cfg.get_int("k", 3));
      path = fs::path(args.out_dir) /
             ("maxkcut_" + std::to_string(i) + ".json");
      std::ofstream os(path);
      os << instance_to_json(gen_maxkcut(vertices, k, s)) << "\n";
    } else if (problem == "qap") {
      int n_f = static_cast<int>(cfg.get_int("n_f", 3));
      path = fs::path(args.out_dir) / ("qap_" + std::to_string(i) + ".json");
      std::ofstream os(path);
      os << instance_to_json(gen_qap(n_f, s)) << "\n";
    } else if (problem == "qkp-benchmark") {
      int items = static_cast<int>(cfg.get_int("items", 10));
      double density = cfg.get_number("density", 0.35);
      path = fs::path(args.out_dir) / ("qkp_" + std::to_string(i) + ".txt");
      save_qkp(gen_qkp_benchmark("qkp_" + std::to_string(i), items, density, s),
               path.string());
    } else {
      throw ConfigError("unknown problem kind: " + problem);
    }
    std::cout << path.string() << "\n";
  }
  return kExitOk;
}

int cmd_oracle(const CommonArgs& args) {
  Config cfg = Config::parse_file(args.config_path);
  CopInstance instance = [&]() -> CopInstance {
    if (cfg.has("benchmark")) {
      QkpBenchmark b = load_qkp(cfg.get_string("benchmark"));
      return derive_qkp(b, static_cast<int>(cfg.get_int("items", b.n)));
    }
    std::ifstream in(cfg.get_string("instance"));
    if (!in)
      throw ConfigError("cannot open instance file: " +
                        cfg.get_string("instance"));
    std::ostringstream body;
    body << in.rdbuf();
    return instance_from_json(body.str());
  }();

  OracleReport report = brute_force(instance);
  std::string json = oracle_to_json(report);
  if (args.out_dir != ".") {
    fs::create_directories(args.out_dir);
    std::ofstream os(fs::path(args.out_dir) / "oracle.json");
    os << json << "\n";
  }
  std::cout << json << "\n";
  return kExitOk;
}

int cmd_report(const CommonArgs& args) {
  Config cfg = Config::parse_file(args.config_path);
  std::vector<std::string> inputs = cfg.get_strings("inputs");

  std::vector<std::string> header;
  std::vector<std::vector<std::string>> merged;
  for (const auto& path : inputs) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open input csv: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty csv: " + path);
    std::vector<std::string> cols;
    {
      std::istringstream ls(line);
      std::string tok;
      while (std::getline(ls, tok, ',')) cols.push_back(tok);
    }
    if (header.empty()) {
      header = cols;
      header.insert(header.begin(), "source");
    } else {
      std::vector<std::string> expected(header.begin() + 1, header.end());
      if (cols != expected)
        throw ConfigError("csv headers differ; cannot merge " + path);
    }
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::vector<std::string> row{fs::path(path).filename().string()};
      std::istringstream ls(line);
      std::string tok;
      while (std::getline(ls, tok, ',')) row.push_back(tok);
      merged.push_back(std::move(row));
    }
  }
  fs::create_directories(args.out_dir);
  write_csv((fs::path(args.out_dir) / "report.csv").string(), header, merged);
  std::cout << "wrote " << merged.size() << " rows to " << args.out_dir
            << "/report.csv\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"compressed-space QAOA simulation laboratory"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string command;
  for (const char* name : {"run-qaoa", "train-compressor", "sweep-noise",
                           "report", "gen-instances", "oracle"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", args.config_path, "configuration file")
        ->required();
    sub->add_option("--out", args.out_dir, "output directory");
    sub->add_option("--seed", args.seed, "seed override (0 keeps the config)");
    sub->add_option("--jobs", args.jobs, "parallel worker count");
    sub->callback([&command, name]() { command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (command == "run-qaoa") return cmd_run_qaoa(args);
    if (command == "train-compressor") return cmd_train_compressor(args);
    if (command == "sweep-noise") return cmd_sweep_noise(args);
    if (command == "gen-instances") return cmd_gen_instances(args);
    if (command == "oracle") return cmd_oracle(args);
    if (command == "report") return cmd_report(args);
    std::cerr << "unknown command\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const TrainingThresholdError& e) {
    std::cerr << "training failure: " << e.what() << "\n";
    return kExitTraining;
  } catch (const SizeCapError& e) {
    std::cerr << "size cap: " << e.what() << "\n";
    return kExitSizeCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
