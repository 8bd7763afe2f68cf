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

#include "csqaoa/train.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace csqaoa {

namespace {

constexpr double kPi = 3.14159265358979323846;

int ceil_log2(std::uint64_t x) {
  int m = 0;
  while ((std::uint64_t{1} << m) < x) ++m;
  return m;
}

// Iterate the D-ansatz gate slots in their fixed order, invoking
// fn(slot_index, gate) for each. Returns the total slot count.
template <typename Fn>
std::size_t for_each_d_slot(int n, int m, int layers, Fn&& fn) {
  std::size_t k = 0;
  for (int i = 0; i < n - m; ++i) fn(k++, GateOp{PauliX{i}});
  for (int layer = 0; layer < layers; ++layer) {
    for (int i1 = 0; i1 < n; ++i1)
      for (int i2 = 0; i2 < n; ++i2) {
        if (i2 == i1) continue;
        for (int i3 = i2 + 1; i3 < n; ++i3) {
          if (i3 == i1) continue;
          fn(k++, GateOp{Cswap{i1, i2, i3}});
        }
      }
    for (int i1 = 0; i1 < n; ++i1)
      for (int i2 = 0; i2 < n; ++i2) {
        if (i2 == i1) continue;
        fn(k++, GateOp{Cnot{i1, i2}});
      }
    for (int i = 0; i < n; ++i) fn(k++, GateOp{PauliX{i}});
  }
  return k;
}

struct CLayout {
  std::vector<GateOp> gates;  // theta filled in later, slot by slot
};

// C-ansatz slots: rotations on the zero-register qubits, then per layer a
// controlled rotation for every ordered pair and a full rotation column.
CLayout c_ansatz_layout(int n, int m, int layers) {
  CLayout lay;
  for (int i = 0; i < n - m; ++i) lay.gates.push_back(RotY{i, 0.0});
  for (int layer = 0; layer < layers; ++layer) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        lay.gates.push_back(ControlledRotY{i, j, 0.0});
      }
    for (int i = 0; i < n; ++i) lay.gates.push_back(RotY{i, 0.0});
  }
  return lay;
}

std::vector<int> iota_range(int lo, int hi) {  // [lo, hi)
  std::vector<int> v(hi - lo);
  std::iota(v.begin(), v.end(), lo);
  return v;
}

Compressor wrap_adjoint_circuit(Circuit decoded, int n, int m,
                                const std::string& kind) {
  Compressor c;
  c.n_qubits = n;
  c.zero_qubits = iota_range(0, n - m);
  c.compressed_qubits = iota_range(n - m, n);
  Circuit forward = inverse_circuit(decoded);
  c.gate_form = forward;
  c.stages.push_back(std::move(forward));
  c.kind = kind;
  return c;
}

// E(U' U, H) evaluated by applying the decoded adjoint circuit and then the
// frozen prefix adjoint to every compressed-sector basis state.
double energy_of_adjoint(const Circuit& decoded, const CompressedHamiltonian& h,
                         int m, const Compressor* prefix,
                         const std::vector<std::uint64_t>* prefix_inverse) {
  const int n = h.n_qubits;
  const std::uint64_t count = std::uint64_t{1} << m;
  const int shift = n - m;
  double acc = 0.0;

  bool classical = true;
  for (const auto& g : decoded.gates)
    if (!is_classical_gate(g)) classical = false;

  if (classical && (prefix == nullptr || prefix_inverse != nullptr)) {
    for (std::uint64_t q = 0; q < count; ++q) {
      std::uint64_t x = q << shift;
      for (const auto& g : decoded.gates) x = classical_image(x, g);
      if (prefix_inverse) x = (*prefix_inverse)[x];
      acc += h.diag[x];
    }
  } else {
    for (std::uint64_t q = 0; q < count; ++q) {
      Statevector s = Statevector::basis(n, q << shift);
      apply_circuit(s, decoded);
      if (prefix) prefix->apply(s, true);
      acc += expectation_diagonal(s, h.diag);
    }
  }
  return acc / static_cast<double>(count);
}

TrainResult train_c_impl(const CompressedHamiltonian& h,
                         const std::vector<std::uint64_t>& feasible, int m,
                         int layers, int n_rep, const PowellConfig& powell,
                         Rng& rng, const Compressor* prefix) {
  const int n = h.n_qubits;
  const std::size_t n_params = c_ansatz_param_count(n, m, layers);
  CLayout layout = c_ansatz_layout(n, m, layers);

  auto decode = [&](const std::vector<double>& theta) {
    Circuit c;
    c.gates = layout.gates;
    std::size_t k = 0;
    for (auto& g : c.gates) {
      if (auto* ry = std::get_if<RotY>(&g)) ry->theta = theta[k++];
      else std::get<ControlledRotY>(g).theta = theta[k++];
    }
    return c;
  };
  auto objective = [&](const std::vector<double>& theta) {
    return energy_of_adjoint(decode(theta), h, m, prefix, nullptr);
  };

  TrainResult best;
  best.energy = std::numeric_limits<double>::infinity();
  for (int rep = 0; rep < n_rep; ++rep) {
    Rng local = rng.fork(rep + 1);
    std::vector<double> theta0(n_params);
    for (double& t : theta0) t = local.uniform(0.0, kPi);
    PowellResult res = powell_minimize(objective, theta0, powell);
    best.evaluations += res.evaluations;
    if (res.f < best.energy) {
      best.energy = res.f;
      best.theta = res.x;
    }
  }
  best.layers = layers;
  best.n_rep = n_rep;

  Compressor trained = wrap_adjoint_circuit(decode(best.theta), n, m, "c-ansatz");
  if (prefix) trained = compose(*prefix, trained);
  best.p_sur = survival_rate(trained, feasible);
  best.compressor = std::move(trained);
  best.met_threshold = best.p_sur >= survival_threshold(AnsatzKind::C);
  return best;
}

TrainResult train_d_impl(const CompressedHamiltonian& h,
                         const std::vector<std::uint64_t>& feasible, int m,
                         int layers, const SaConfig& sa, Rng& rng,
                         const Compressor* prefix) {
  const int n = h.n_qubits;
  const std::size_t n_params = d_ansatz_param_count(n, m, layers);

  std::vector<std::uint64_t> prefix_inverse;
  const std::vector<std::uint64_t>* inv_ptr = nullptr;
  if (prefix != nullptr) {
    if (!prefix->is_classical())
      throw std::invalid_argument(
          "D-ansatz stages compose only onto classical prefixes");
    const std::uint64_t dim = std::uint64_t{1} << n;
    prefix_inverse.resize(dim);
    for (std::uint64_t x = 0; x < dim; ++x)
      prefix_inverse[prefix->classical_map(x, false)] = x;
    inv_ptr = &prefix_inverse;
  }

  auto decode = [&](const std::vector<bool>& bits) {
    Circuit c;
    for_each_d_slot(n, m, layers, [&](std::size_t k, const GateOp& g) {
      if (bits[k]) c.gates.push_back(g);
    });
    return c;
  };
  auto objective = [&](const std::vector<bool>& bits) {
    // Classical index walk; no circuit materialization.
    const std::uint64_t count = std::uint64_t{1} << m;
    const int shift = n - m;
    std::vector<std::uint64_t> xs(count);
    for (std::uint64_t q = 0; q < count; ++q) xs[q] = q << shift;
    for_each_d_slot(n, m, layers, [&](std::size_t k, const GateOp& g) {
      if (!bits[k]) return;
      for (auto& x : xs) x = classical_image(x, g);
    });
    double acc = 0.0;
    for (std::uint64_t x : xs)
      acc += h.diag[inv_ptr ? (*inv_ptr)[x] : x];
    return acc / static_cast<double>(count);
  };

  Rng local = rng.fork(1);
  SaResult res = anneal_binary(objective, static_cast<int>(n_params), sa, local);

  TrainResult best;
  best.bits = res.bits;
  best.energy = res.f;
  best.evaluations = res.evaluations;
  best.layers = layers;
  best.sa = sa;

  Compressor trained = wrap_adjoint_circuit(decode(res.bits), n, m, "d-ansatz");
  if (prefix) trained = compose(*prefix, trained);
  best.p_sur = survival_rate(trained, feasible);
  best.compressor = std::move(trained);
  best.met_threshold = best.p_sur >= survival_threshold(AnsatzKind::D);
  return best;
}

}  // namespace

std::size_t d_ansatz_param_count(int n, int m, int layers) {
  std::size_t per_layer = static_cast<std::size_t>(n) * (n - 1) * (n - 2) / 2 +
                          static_cast<std::size_t>(n) * (n - 1) +
                          static_cast<std::size_t>(n);
  return static_cast<std::size_t>(n - m) + layers * per_layer;
}

std::size_t c_ansatz_param_count(int n, int m, int layers) {
  return static_cast<std::size_t>(n - m) +
         static_cast<std::size_t>(layers) * (n * (n - 1) + n);
}

Circuit decode_d_ansatz(const DParams& p) {
  if (p.bits.size() != d_ansatz_param_count(p.n_qubits, p.m, p.layers))
    throw std::invalid_argument("D-ansatz bit vector has the wrong length");
  Circuit c;
  for_each_d_slot(p.n_qubits, p.m, p.layers,
                  [&](std::size_t k, const GateOp& g) {
                    if (p.bits[k]) c.gates.push_back(g);
                  });
  return c;
}

Circuit decode_c_ansatz(const CParams& p) {
  if (p.theta.size() != c_ansatz_param_count(p.n_qubits, p.m, p.layers))
    throw std::invalid_argument("C-ansatz parameter vector has the wrong length");
  CLayout layout = c_ansatz_layout(p.n_qubits, p.m, p.layers);
  Circuit c;
  c.gates = layout.gates;
  std::size_t k = 0;
  for (auto& g : c.gates) {
    if (auto* ry = std::get_if<RotY>(&g)) ry->theta = p.theta[k++];
    else std::get<ControlledRotY>(g).theta = p.theta[k++];
  }
  return c;
}

Compressor compressor_from_d(const DParams& p) {
  return wrap_adjoint_circuit(decode_d_ansatz(p), p.n_qubits, p.m, "d-ansatz");
}

Compressor compressor_from_c(const CParams& p) {
  return wrap_adjoint_circuit(decode_c_ansatz(p), p.n_qubits, p.m, "c-ansatz");
}

double survival_threshold(AnsatzKind kind) {
  return kind == AnsatzKind::C ? 0.98 : 1.0 - 1e-12;
}

TrainResult train_c_ansatz(const CompressedHamiltonian& h,
                           const std::vector<std::uint64_t>& feasible, int m,
                           int layers, int n_rep, const PowellConfig& powell,
                           Rng& rng) {
  if (layers < 1) throw std::invalid_argument("need at least one layer");
  return train_c_impl(h, feasible, m, layers, n_rep, powell, rng, nullptr);
}

TrainResult train_d_ansatz(const CompressedHamiltonian& h,
                           const std::vector<std::uint64_t>& feasible, int m,
                           int layers, const SaConfig& sa, Rng& rng) {
  if (layers < 1) throw std::invalid_argument("need at least one layer");
  return train_d_impl(h, feasible, m, layers, sa, rng, nullptr);
}

TrainResult train_with_escalation(AnsatzKind kind,
                                  const CompressedHamiltonian& h,
                                  const std::vector<std::uint64_t>& feasible,
                                  int m, const TrainBudget& budget, Rng& rng) {
  TrainResult best;
  best.energy = std::numeric_limits<double>::infinity();
  best.p_sur = -1.0;
  int attempt = 0;
  for (int extra_layer = 0; extra_layer <= 2; ++extra_layer) {
    int layers = budget.layers + extra_layer;
    int n_rep = budget.n_rep;
    SaConfig sa = budget.sa;
    for (int d = 0; d <= budget.doublings; ++d) {
      Rng local = rng.fork(100 + attempt);
      ++attempt;
      TrainResult r =
          kind == AnsatzKind::C
              ? train_c_impl(h, feasible, m, layers, n_rep, budget.powell,
                             local, nullptr)
              : train_d_impl(h, feasible, m, layers, sa, local, nullptr);
      r.evaluations += best.evaluations;
      if (r.p_sur > best.p_sur ||
          (r.p_sur == best.p_sur && r.energy < best.energy)) {
        long evals = r.evaluations;
        best = std::move(r);
        best.evaluations = evals;
      } else {
        best.evaluations = r.evaluations;
      }
      if (best.met_threshold) return best;
      n_rep *= 2;
      sa.n_loop *= 2;
    }
  }
  return best;  // flagged: met_threshold stays false
}

Compressor compose_constraints(int n_total,
                               const std::vector<CompressionPlan>& plans,
                               Rng& rng) {
  if (plans.empty()) throw std::invalid_argument("no constraints to compose");
  Compressor acc = Compressor::identity(n_total);

  // Running feasible set under the constraints handled so far.
  std::vector<std::uint64_t> feasible;
  const std::uint64_t dim = std::uint64_t{1} << n_total;
  for (std::uint64_t x = 0; x < dim; ++x) feasible.push_back(x);

  for (std::size_t k = 0; k < plans.size(); ++k) {
    const CompressionPlan& plan = plans[k];
    std::vector<std::uint64_t> next_feasible;
    for (std::uint64_t x : feasible)
      if (plan.constraint.satisfied(x)) next_feasible.push_back(x);
    if (next_feasible.empty())
      throw ComposeError(static_cast<int>(k), "constraint leaves no feasible state");

    if (plan.strategy == CompressionStrategy::Deterministic) {
      Compressor stage;
      switch (plan.constraint.kind) {
        case ConstraintKind::OneHot:
          stage = build_onehot_binary(n_total, plan.constraint.variables);
          break;
        case ConstraintKind::ParityEven:
          stage = build_parity(n_total, plan.constraint.variables, false);
          break;
        case ConstraintKind::ParityOdd:
          stage = build_parity(n_total, plan.constraint.variables, true);
          break;
        default:
          throw ComposeError(static_cast<int>(k),
                             "no deterministic compressor for constraint: " +
                                 plan.constraint.describe());
      }
      acc = compose(acc, stage);
    } else {
      // Trained stages assume the zero register grows along the low qubits.
      for (std::size_t i = 0; i < acc.zero_qubits.size(); ++i)
        if (acc.zero_qubits[i] != static_cast<int>(i))
          throw ComposeError(static_cast<int>(k),
                             "trained stage needs a contiguous zero register");
      int m_next = plan.m_next;
      if (m_next <= 0)
        m_next = std::max(1, ceil_log2(next_feasible.size()));
      if (m_next > acc.m())
        throw ComposeError(static_cast<int>(k), "target width exceeds current width");

      Rng stage_rng = rng.fork(1000 + k);
      CompressedHamiltonian h = build_hcs(n_total, plan.constraint, stage_rng);

      const Compressor* prefix = acc.stages.empty() ? nullptr : &acc;
      TrainResult r;
      Rng train_rng = rng.fork(2000 + k);
      if (plan.strategy == CompressionStrategy::AnsatzC) {
        r = train_c_impl(h, next_feasible, m_next, plan.budget.layers,
                         plan.budget.n_rep, plan.budget.powell, train_rng,
                         prefix);
      } else {
        r = train_d_impl(h, next_feasible, m_next, plan.budget.layers,
                         plan.budget.sa, train_rng, prefix);
      }
      if (!r.met_threshold)
        throw ComposeError(static_cast<int>(k),
                           "training threshold unmet at stage " +
                               std::to_string(k) +
                               " (p_sur = " + std::to_string(r.p_sur) + ")");
      acc = std::move(r.compressor);
    }
    feasible = std::move(next_feasible);
  }
  return acc;
}

CompressorRecord make_record(const ConstraintSpec& spec,
                             const TrainResult& result, AnsatzKind kind,
                             int n_total,
                             const std::vector<std::uint64_t>& feasible,
                             std::uint64_t seed) {
  CompressorRecord rec;
  switch (spec.kind) {
    case ConstraintKind::OneHot: rec.constraint_kind = "one-hot"; break;
    case ConstraintKind::ParityEven: rec.constraint_kind = "parity-even"; break;
    case ConstraintKind::ParityOdd: rec.constraint_kind = "parity-odd"; break;
    case ConstraintKind::Range: rec.constraint_kind = "range"; break;
    case ConstraintKind::LowerOnly: rec.constraint_kind = "lower-only"; break;
    case ConstraintKind::UpperOnly: rec.constraint_kind = "upper-only"; break;
    case ConstraintKind::General: rec.constraint_kind = "general"; break;
  }
  rec.variables = spec.variables;
  rec.coeffs = spec.coeffs;
  rec.lower = spec.lower;
  rec.upper = spec.upper;
  rec.n_qubits = n_total;
  rec.m = result.compressor.m();
  rec.layers = result.layers;
  rec.ansatz = kind == AnsatzKind::C ? "C" : "D";
  rec.p_sur = result.p_sur;
  rec.failed = !result.met_threshold;
  rec.seed = seed;
  rec.fs_ratio_original = static_cast<double>(feasible.size()) /
                          static_cast<double>(std::uint64_t{1} << n_total);
  if (kind == AnsatzKind::D) {
    rec.params.reserve(result.bits.size());
    for (bool b : result.bits) rec.params.push_back(b ? 1.0 : 0.0);
    rec.n_loop = result.sa.n_loop;
    rec.t_initial = result.sa.t_initial;
    rec.t_final = result.sa.t_final;
    const std::uint64_t count = std::uint64_t{1} << rec.m;
    std::vector<bool> feasible_mask(std::uint64_t{1} << n_total, false);
    for (std::uint64_t x : feasible) feasible_mask[x] = true;
    int feasible_in = 0;
    for (std::uint64_t q = 0; q < count; ++q) {
      std::uint64_t x = result.compressor.classical_map(
          result.compressor.sector_index(q), true);
      rec.label.push_back(x);
      if (feasible_mask[x]) ++feasible_in;
    }
    rec.fs_ratio_compressed = static_cast<double>(feasible_in) / count;
  } else {
    rec.params = result.theta;
    rec.n_loop = result.n_rep;
    const std::uint64_t count = std::uint64_t{1} << rec.m;
    std::vector<bool> feasible_mask(std::uint64_t{1} << n_total, false);
    for (std::uint64_t x : feasible) feasible_mask[x] = true;
    double mass = 0.0;
    for (std::uint64_t q = 0; q < count; ++q) {
      Statevector s = Statevector::basis(
          n_total, result.compressor.sector_index(q));
      result.compressor.apply(s, true);
      for (std::uint64_t x = 0; x < s.dim(); ++x)
        if (feasible_mask[x]) mass += std::norm(s.amps[x]);
    }
    rec.fs_ratio_compressed = mass / static_cast<double>(count);
  }
  return rec;
}

Compressor compressor_from_record(const CompressorRecord& rec) {
  if (rec.ansatz == "D") {
    DParams p;
    p.n_qubits = rec.n_qubits;
    p.m = rec.m;
    p.layers = rec.layers;
    for (double v : rec.params) p.bits.push_back(v != 0.0);
    return compressor_from_d(p);
  }
  CParams p;
  p.n_qubits = rec.n_qubits;
  p.m = rec.m;
  p.layers = rec.layers;
  p.theta = rec.params;
  return compressor_from_c(p);
}

std::vector<CompressorRecord> matching_records(
    const std::vector<CompressorRecord>& db, const ConstraintSpec& spec,
    int n_total) {
  std::string kind;
  switch (spec.kind) {
    case ConstraintKind::OneHot: kind = "one-hot"; break;
    case ConstraintKind::ParityEven: kind = "parity-even"; break;
    case ConstraintKind::ParityOdd: kind = "parity-odd"; break;
    case ConstraintKind::Range: kind = "range"; break;
    case ConstraintKind::LowerOnly: kind = "lower-only"; break;
    case ConstraintKind::UpperOnly: kind = "upper-only"; break;
    case ConstraintKind::General: return {};  // predicates are not persisted
  }
  std::vector<CompressorRecord> out;
  for (const auto& rec : db) {
    if (rec.failed || rec.constraint_kind != kind || rec.n_qubits != n_total)
      continue;
    if (rec.variables != spec.variables || rec.coeffs != spec.coeffs) continue;
    if (rec.lower != spec.lower || rec.upper != spec.upper) continue;
    out.push_back(rec);
  }
  return out;
}

std::string records_to_json(const std::vector<CompressorRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json j;
    j["constraint"] = {{"kind", r.constraint_kind},
                       {"variables", r.variables},
                       {"coeffs", r.coeffs},
                       {"lower", r.lower},
                       {"upper", r.upper}};
    j["N"] = r.n_qubits;
    j["m"] = r.m;
    j["l_layers"] = r.layers;
    j["ansatz"] = r.ansatz;
    j["params"] = r.params;
    j["label"] = r.label;
    j["p_sur"] = r.p_sur;
    j["fs_ratio_original"] = r.fs_ratio_original;
    j["fs_ratio_compressed"] = r.fs_ratio_compressed;
    j["n_loop"] = r.n_loop;
    j["T_i"] = r.t_initial;
    j["T_f"] = r.t_final;
    j["seed"] = r.seed;
    j["failed"] = r.failed;
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

std::vector<CompressorRecord> records_from_json(const std::string& text) {
  nlohmann::json arr = nlohmann::json::parse(text);
  std::vector<CompressorRecord> out;
  for (const auto& j : arr) {
    CompressorRecord r;
    r.constraint_kind = j.at("constraint").at("kind").get<std::string>();
    r.variables = j.at("constraint").at("variables").get<std::vector<int>>();
    r.coeffs = j.at("constraint").at("coeffs").get<std::vector<double>>();
    r.lower = j.at("constraint").at("lower").get<double>();
    r.upper = j.at("constraint").at("upper").get<double>();
    r.n_qubits = j.at("N").get<int>();
    r.m = j.at("m").get<int>();
    r.layers = j.at("l_layers").get<int>();
    r.ansatz = j.at("ansatz").get<std::string>();
    r.params = j.at("params").get<std::vector<double>>();
    r.label = j.at("label").get<std::vector<std::uint64_t>>();
    r.p_sur = j.at("p_sur").get<double>();
    r.fs_ratio_original = j.at("fs_ratio_original").get<double>();
    r.fs_ratio_compressed = j.at("fs_ratio_compressed").get<double>();
    r.n_loop = j.at("n_loop").get<long>();
    r.t_initial = j.at("T_i").get<double>();
    r.t_final = j.at("T_f").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.failed = j.at("failed").get<bool>();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace csqaoa
