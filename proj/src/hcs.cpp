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

#include "csqaoa/hcs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace csqaoa {

double ConstraintSpec::g(std::uint64_t bits) const {
  double acc = constant;
  for (std::size_t j = 0; j < variables.size(); ++j) {
    if ((bits >> variables[j]) & 1)
      acc += coeffs.empty() ? 1.0 : coeffs[j];
  }
  return acc;
}

bool ConstraintSpec::satisfied(std::uint64_t bits) const {
  switch (kind) {
    case ConstraintKind::OneHot:
      return g(bits) == 1.0;
    case ConstraintKind::ParityEven:
    case ConstraintKind::ParityOdd: {
      int ones = 0;
      for (int v : variables) ones += (bits >> v) & 1;
      return (ones % 2 == 0) == (kind == ConstraintKind::ParityEven);
    }
    case ConstraintKind::Range:
      return g(bits) >= lower && g(bits) <= upper;
    case ConstraintKind::LowerOnly:
      return g(bits) >= lower;
    case ConstraintKind::UpperOnly:
      return g(bits) <= upper;
    case ConstraintKind::General: {
      if (!predicate) throw std::logic_error("general constraint lacks predicate");
      std::uint64_t local = 0;
      for (std::size_t j = 0; j < variables.size(); ++j)
        if ((bits >> variables[j]) & 1) local |= std::uint64_t{1} << j;
      return predicate(local);
    }
  }
  return false;
}

std::string ConstraintSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case ConstraintKind::OneHot: os << "one-hot"; break;
    case ConstraintKind::ParityEven: os << "parity-even"; break;
    case ConstraintKind::ParityOdd: os << "parity-odd"; break;
    case ConstraintKind::Range: os << lower << " <= g <= " << upper; break;
    case ConstraintKind::LowerOnly: os << "g >= " << lower; break;
    case ConstraintKind::UpperOnly: os << "g <= " << upper; break;
    case ConstraintKind::General: os << "general"; break;
  }
  os << " over " << variables.size() << " vars";
  return os.str();
}

ConstraintSpec ConstraintSpec::sum_range(const std::vector<int>& vars,
                                         double lo, double hi) {
  ConstraintSpec s;
  s.kind = ConstraintKind::Range;
  s.variables = vars;
  s.lower = lo;
  s.upper = hi;
  return s;
}

ConstraintSpec ConstraintSpec::weighted_upper(const std::vector<int>& vars,
                                              const std::vector<double>& weights,
                                              double capacity) {
  if (weights.size() != vars.size())
    throw std::invalid_argument("weight count must match variable count");
  ConstraintSpec s;
  s.kind = ConstraintKind::UpperOnly;
  s.variables = vars;
  s.coeffs = weights;
  s.upper = capacity;
  return s;
}

ConstraintSpec ConstraintSpec::one_hot(const std::vector<int>& vars) {
  ConstraintSpec s;
  s.kind = ConstraintKind::OneHot;
  s.variables = vars;
  s.lower = 1.0;
  s.upper = 1.0;
  return s;
}

ConstraintSpec ConstraintSpec::parity(const std::vector<int>& vars, bool odd) {
  ConstraintSpec s;
  s.kind = odd ? ConstraintKind::ParityOdd : ConstraintKind::ParityEven;
  s.variables = vars;
  return s;
}

std::vector<std::uint64_t> enumerate_feasible(int n_total,
                                              const ConstraintSpec& spec) {
  if (n_total > 24) throw std::invalid_argument("feasible enumeration capped at 24 qubits");
  std::vector<std::uint64_t> out;
  const std::uint64_t dim = std::uint64_t{1} << n_total;
  for (std::uint64_t x = 0; x < dim; ++x)
    if (spec.satisfied(x)) out.push_back(x);
  return out;
}

namespace {

double base_value(const ConstraintSpec& spec, std::uint64_t x) {
  switch (spec.kind) {
    case ConstraintKind::OneHot:
      return (spec.g(x) - 1.0) * (spec.g(x) - 1.0);
    case ConstraintKind::Range:
      return (spec.g(x) - spec.lower) * (spec.g(x) - spec.upper);
    case ConstraintKind::LowerOnly:
      return -(spec.g(x) - spec.lower);
    case ConstraintKind::UpperOnly:
      return spec.g(x) - spec.upper;
    default:
      return spec.satisfied(x) ? 0.0 : 1.0;
  }
}

}  // namespace

CompressedHamiltonian build_hcs(int n_total, const ConstraintSpec& spec,
                                Rng& rng) {
  if (n_total <= 0 || n_total > 24)
    throw std::invalid_argument("compressed Hamiltonian needs 1..24 qubits");
  for (int v : spec.variables)
    if (v < 0 || v >= n_total)
      throw std::invalid_argument("constraint variable out of range");

  const std::uint64_t dim = std::uint64_t{1} << n_total;
  const double bound = 1.0 / (2.0 * n_total);

  for (int attempt = 0; attempt < 10; ++attempt) {
    CompressedHamiltonian h;
    h.n_qubits = n_total;
    h.epsilon.resize(n_total);
    double max_eps = 0.0;
    for (double& e : h.epsilon) {
      e = rng.uniform(-0.05, 0.05);
      max_eps = std::max(max_eps, std::abs(e));
    }
    if (max_eps >= bound && max_eps > 0.0) {
      double f = 0.999 * bound / max_eps;
      for (double& e : h.epsilon) e *= f;
    }
    h.diag.resize(dim);
    for (std::uint64_t x = 0; x < dim; ++x) {
      double v = base_value(spec, x);
      for (int i = 0; i < n_total; ++i)
        v += ((x >> i) & 1) ? h.epsilon[i] : -h.epsilon[i];
      h.diag[x] = v;
    }
    std::vector<double> sorted = h.diag;
    std::sort(sorted.begin(), sorted.end());
    bool degenerate = false;
    for (std::size_t i = 1; i < sorted.size(); ++i)
      if (sorted[i] - sorted[i - 1] <= 1e-12) {
        degenerate = true;
        break;
      }
    if (!degenerate) return h;
  }
  throw std::runtime_error(
      "compressed Hamiltonian remained degenerate after 10 tilt redraws: " +
      spec.describe());
}

HcsAudit audit_hcs(const CompressedHamiltonian& h, const ConstraintSpec& spec) {
  HcsAudit audit;
  std::vector<double> sorted = h.diag;
  std::sort(sorted.begin(), sorted.end());
  audit.nondegenerate = true;
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] - sorted[i - 1] <= 1e-12) audit.nondegenerate = false;

  audit.feasible_max = -std::numeric_limits<double>::infinity();
  audit.infeasible_min = std::numeric_limits<double>::infinity();
  for (std::uint64_t x = 0; x < h.diag.size(); ++x) {
    if (spec.satisfied(x))
      audit.feasible_max = std::max(audit.feasible_max, h.diag[x]);
    else
      audit.infeasible_min = std::min(audit.infeasible_min, h.diag[x]);
  }
  audit.separated = audit.feasible_max < audit.infeasible_min;
  return audit;
}

double low_energy_mean(const CompressedHamiltonian& h, int m) {
  std::vector<double> sorted = h.diag;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t count = std::size_t{1} << m;
  if (count > sorted.size()) throw std::invalid_argument("m exceeds register");
  double acc = 0.0;
  for (std::size_t i = 0; i < count; ++i) acc += sorted[i];
  return acc / static_cast<double>(count);
}

}  // namespace csqaoa
