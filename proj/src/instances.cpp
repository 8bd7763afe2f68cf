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

#include "csqaoa/instances.hpp"

#include "csqaoa/errors.hpp"

#include <cmath>
#include <limits>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace csqaoa {

MaxKCut gen_maxkcut(int n_vertices, int k, std::uint64_t seed) {
  if (n_vertices < 2) throw std::invalid_argument("need at least two vertices");
  MaxKCut g;
  g.n_vertices = n_vertices;
  g.k = k;
  Rng rng(seed);
  for (int u = 0; u < n_vertices; ++u)
    for (int v = u + 1; v < n_vertices; ++v)
      if (rng.bernoulli(0.5)) g.edges.emplace_back(u, v);
  return g;
}

Qap gen_qap(int n_f, std::uint64_t seed) {
  if (n_f < 2) throw std::invalid_argument("QAP needs n_f >= 2");
  Qap q;
  q.n_f = n_f;
  q.flow.assign(n_f, std::vector<double>(n_f, 0.0));
  q.dist.assign(n_f, std::vector<double>(n_f, 0.0));
  Rng rng(seed);
  for (int i = 0; i < n_f; ++i)
    for (int j = i + 1; j < n_f; ++j) {
      double f = 1.0 + static_cast<double>(rng.integer(5));
      q.flow[i][j] = q.flow[j][i] = f;
    }
  for (int a = 0; a < n_f; ++a)
    for (int b = a + 1; b < n_f; ++b) {
      double d = 1.0 + static_cast<double>(rng.integer(10));
      q.dist[a][b] = q.dist[b][a] = d;
    }
  return q;
}

namespace {

[[noreturn]] void parse_fail(const std::string& path, int line,
                             const std::string& what) {
  std::ostringstream os;
  os << path << ":" << line << ": " << what;
  throw std::runtime_error(os.str());
}

}  // namespace

QkpBenchmark load_qkp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  QkpBenchmark b;
  b.name = path;
  std::string line;
  int line_no = 0;

  auto next_line = [&]() {
    if (!std::getline(in, line)) parse_fail(path, line_no + 1, "unexpected end of file");
    ++line_no;
  };

  next_line();
  {
    std::istringstream is(line);
    if (!(is >> b.n) || b.n <= 0) parse_fail(path, line_no, "bad item count");
  }
  next_line();
  {
    std::istringstream is(line);
    if (!(is >> b.capacity) || b.capacity <= 0.0)
      parse_fail(path, line_no, "bad capacity");
  }
  next_line();
  {
    std::istringstream is(line);
    b.weights.resize(b.n);
    for (int i = 0; i < b.n; ++i)
      if (!(is >> b.weights[i]) || b.weights[i] <= 0.0)
        parse_fail(path, line_no, "bad weight entry");
  }
  b.profit.resize(b.n);
  for (int i = 0; i < b.n; ++i) {
    next_line();
    std::istringstream is(line);
    b.profit[i].resize(b.n - i);
    for (int j = 0; j < b.n - i; ++j)
      if (!(is >> b.profit[i][j]))
        parse_fail(path, line_no, "bad profit entry");
  }
  return b;
}

void save_qkp(const QkpBenchmark& bench, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << bench.n << "\n" << bench.capacity << "\n";
  for (int i = 0; i < bench.n; ++i)
    out << bench.weights[i] << (i + 1 < bench.n ? ' ' : '\n');
  for (int i = 0; i < bench.n; ++i) {
    for (std::size_t j = 0; j < bench.profit[i].size(); ++j)
      out << bench.profit[i][j]
          << (j + 1 < bench.profit[i].size() ? ' ' : '\n');
  }
}

QkpBenchmark gen_qkp_benchmark(const std::string& name, int n, double density,
                               std::uint64_t seed) {
  QkpBenchmark b;
  b.name = name;
  b.n = n;
  Rng rng(seed);
  b.weights.resize(n);
  double total_weight = 0.0;
  for (double& w : b.weights) {
    w = 1.0 + static_cast<double>(rng.integer(50));
    total_weight += w;
  }
  b.profit.resize(n);
  for (int i = 0; i < n; ++i) {
    b.profit[i].resize(n - i, 0.0);
    for (int j = 0; j < n - i; ++j)
      if (rng.bernoulli(density))
        b.profit[i][j] = 1.0 + static_cast<double>(rng.integer(100));
  }
  double span = std::max(1.0, total_weight - 50.0);
  b.capacity = 50.0 + std::floor(rng.uniform() * span);
  if (b.capacity > total_weight) b.capacity = total_weight;
  return b;
}

Qkp derive_qkp(const QkpBenchmark& bench, int n_i) {
  if (n_i < 1 || n_i > bench.n)
    throw std::invalid_argument("sub-instance size exceeds the benchmark");
  Qkp q;
  q.n_items = n_i;
  q.weights.assign(bench.weights.begin(), bench.weights.begin() + n_i);
  q.profit.resize(n_i);
  for (int i = 0; i < n_i; ++i)
    q.profit[i].assign(bench.profit[i].begin(),
                       bench.profit[i].begin() + (n_i - i));
  q.capacity = std::floor(n_i * bench.capacity / bench.n);
  return q;
}

OracleReport brute_force(const CopInstance& instance) {
  const int n = num_qubits(instance);
  if (n > 24) throw SizeCapError("brute force capped at 24 qubits");
  Encoding enc = encode(instance);

  OracleReport rep;
  rep.optimal_value = std::numeric_limits<double>::infinity();
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (std::uint64_t x = 0; x < dim; ++x) {
    if (!check_feasible(instance, x)) continue;
    ++rep.n_feasible;
    double v = enc.objective.value(x);
    if (v < rep.optimal_value - 1e-9) {
      rep.optimal_value = v;
      rep.optima.clear();
      rep.optima.push_back(x);
    } else if (std::abs(v - rep.optimal_value) <= 1e-9) {
      rep.optima.push_back(x);
    }
  }
  rep.p_feasible = static_cast<double>(rep.n_feasible) / static_cast<double>(dim);
  return rep;
}

std::vector<std::uint64_t> enumerate_feasible(const CopInstance& instance) {
  const int n = num_qubits(instance);
  if (n > 24) throw SizeCapError("enumeration capped at 24 qubits");
  std::vector<std::uint64_t> out;
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (std::uint64_t x = 0; x < dim; ++x)
    if (check_feasible(instance, x)) out.push_back(x);
  return out;
}

std::string instance_to_json(const CopInstance& instance) {
  nlohmann::json j;
  if (const auto* mc = std::get_if<MaxKCut>(&instance)) {
    j["problem"] = "maxkcut";
    j["vertices"] = mc->n_vertices;
    j["k"] = mc->k;
    nlohmann::json edges = nlohmann::json::array();
    for (auto [u, v] : mc->edges) edges.push_back({u, v});
    j["edges"] = edges;
  } else if (const auto* qap = std::get_if<Qap>(&instance)) {
    j["problem"] = "qap";
    j["f"] = qap->flow;
    j["d"] = qap->dist;
  } else {
    const auto& qkp = std::get<Qkp>(instance);
    j["problem"] = "qkp";
    j["weights"] = qkp.weights;
    j["capacity"] = qkp.capacity;
    j["profit"] = qkp.profit;
  }
  return j.dump(2);
}

CopInstance instance_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  const std::string kind = j.at("problem").get<std::string>();
  if (kind == "maxkcut") {
    MaxKCut mc;
    mc.n_vertices = j.at("vertices").get<int>();
    mc.k = j.at("k").get<int>();
    for (const auto& e : j.at("edges"))
      mc.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return mc;
  }
  if (kind == "qap") {
    Qap q;
    q.flow = j.at("f").get<std::vector<std::vector<double>>>();
    q.dist = j.at("d").get<std::vector<std::vector<double>>>();
    q.n_f = static_cast<int>(q.flow.size());
    return q;
  }
  if (kind == "qkp") {
    Qkp q;
    q.weights = j.at("weights").get<std::vector<double>>();
    q.capacity = j.at("capacity").get<double>();
    q.profit = j.at("profit").get<std::vector<std::vector<double>>>();
    q.n_items = static_cast<int>(q.weights.size());
    return q;
  }
  throw std::runtime_error("unknown problem kind: " + kind);
}

std::string oracle_to_json(const OracleReport& report) {
  nlohmann::json j;
  j["optima"] = report.optima;
  j["optimal_value"] = report.optimal_value;
  j["n_feasible"] = report.n_feasible;
  j["p_feasible"] = report.p_feasible;
  return j.dump(2);
}

}  // namespace csqaoa
