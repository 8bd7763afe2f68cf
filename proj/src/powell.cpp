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

#include "csqaoa/powell.hpp"

#include <cmath>
#include <stdexcept>

namespace csqaoa {

namespace {

constexpr double kGolden = 1.618033988749895;
constexpr double kCGolden = 0.3819660112501051;
constexpr double kTiny = 1e-20;
constexpr int kBracketCap = 100;  // expansion steps before giving up
constexpr int kBrentIters = 100;

struct LineFn {
  const ObjectiveFn& f;
  const std::vector<double>& origin;
  const std::vector<double>& dir;
  long& evals;
  mutable std::vector<double> scratch;

  double operator()(double t) const {
    scratch.resize(origin.size());
    for (std::size_t i = 0; i < origin.size(); ++i)
      scratch[i] = origin[i] + t * dir[i];
    double v = f(scratch);
    ++evals;
    if (!std::isfinite(v))
      throw std::runtime_error("objective returned a non-finite value");
    return v;
  }
};

struct Bracket {
  double a, b, c;
  double fa, fb, fc;
  bool ok;
};

// Downhill bracketing by golden expansion from (0, step).
Bracket bracket_minimum(const LineFn& f, double step, double f0) {
  Bracket br{};
  double a = 0.0, fa = f0;
  double b = step, fb = f(b);
  if (fb > fa) {
    std::swap(a, b);
    std::swap(fa, fb);
  }
  double c = b + kGolden * (b - a);
  double fc = f(c);
  int steps = 0;
  while (fb >= fc) {
    if (++steps > kBracketCap) {
      br.ok = false;
      br.b = c;  // best point seen so far
      br.fb = fc;
      return br;
    }
    double d = c + kGolden * (c - b);
    double fd = f(d);
    a = b; fa = fb;
    b = c; fb = fc;
    c = d; fc = fd;
  }
  br = Bracket{a, b, c, fa, fb, fc, true};
  return br;
}

// Brent's parabolic/golden-section line minimization on a bracket.
void brent(const LineFn& f, const Bracket& br, double tol, double& tmin,
           double& fmin) {
  double a = std::min(br.a, br.c), b = std::max(br.a, br.c);
  double x = br.b, w = br.b, v = br.b;
  double fx = br.fb, fw = br.fb, fv = br.fb;
  double d = 0.0, e = 0.0;

  for (int iter = 0; iter < kBrentIters; ++iter) {
    double xm = 0.5 * (a + b);
    double tol1 = tol * std::abs(x) + 1e-11;
    double tol2 = 2.0 * tol1;
    if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) break;
    bool golden = true;
    if (std::abs(e) > tol1) {
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      double e_old = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * e_old) && p > q * (a - x) &&
          p < q * (b - x)) {
        d = p / q;
        double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = (xm >= x) ? tol1 : -tol1;
        golden = false;
      }
    }
    if (golden) {
      e = (x >= xm) ? a - x : b - x;
      d = kCGolden * e;
    }
    double u = (std::abs(d) >= tol1) ? x + d : x + ((d >= 0.0) ? tol1 : -tol1);
    double fu = f(u);
    if (fu <= fx) {
      if (u >= x) a = x; else b = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  tmin = x;
  fmin = fx;
}

// Minimize along origin + t * dir; moves origin to the line minimum.
double line_minimize(const ObjectiveFn& f, std::vector<double>& origin,
                     const std::vector<double>& dir, double f0,
                     const PowellConfig& cfg, long& evals) {
  LineFn lf{f, origin, dir, evals, {}};
  Bracket br = bracket_minimum(lf, cfg.initial_step, f0);
  double tmin, fmin;
  if (!br.ok) {
    tmin = br.b;
    fmin = br.fb;
    if (fmin >= f0) return f0;  // nothing gained; stay put
  } else {
    brent(lf, br, cfg.line_tol, tmin, fmin);
  }
  if (fmin >= f0) return f0;
  for (std::size_t i = 0; i < origin.size(); ++i) origin[i] += tmin * dir[i];
  return fmin;
}

}  // namespace

PowellResult powell_minimize(const ObjectiveFn& f,
                             const std::vector<double>& x0,
                             const PowellConfig& config) {
  const std::size_t n = x0.size();
  if (n == 0) throw std::invalid_argument("empty start point");
  if (config.ftol <= 0.0) throw std::invalid_argument("ftol must be positive");

  PowellResult res;
  res.x = x0;
  res.evaluations = 0;
  res.f = f(res.x);
  ++res.evaluations;
  if (!std::isfinite(res.f))
    throw std::runtime_error("objective returned a non-finite value");

  std::vector<std::vector<double>> dirs(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) dirs[i][i] = 1.0;

  for (int iter = 0; iter < config.max_iter; ++iter) {
    res.iterations = iter + 1;
    const double f_start = res.f;
    const std::vector<double> x_start = res.x;
    double biggest_drop = 0.0;
    std::size_t biggest_idx = 0;

    for (std::size_t i = 0; i < n; ++i) {
      double before = res.f;
      res.f = line_minimize(f, res.x, dirs[i], res.f, config, res.evaluations);
      if (before - res.f > biggest_drop) {
        biggest_drop = before - res.f;
        biggest_idx = i;
      }
    }

    if (2.0 * (f_start - res.f) <=
        config.ftol * (std::abs(f_start) + std::abs(res.f)) + kTiny) {
      res.converged = true;
      break;
    }

    // Powell's test for adopting the extrapolated displacement direction.
    std::vector<double> x_e(n), new_dir(n);
    for (std::size_t i = 0; i < n; ++i) {
      x_e[i] = 2.0 * res.x[i] - x_start[i];
      new_dir[i] = res.x[i] - x_start[i];
    }
    double f_e = f(x_e);
    ++res.evaluations;
    if (!std::isfinite(f_e))
      throw std::runtime_error("objective returned a non-finite value");
    if (f_e < f_start) {
      double t = 2.0 * (f_start - 2.0 * res.f + f_e) *
                     (f_start - res.f - biggest_drop) *
                     (f_start - res.f - biggest_drop) -
                 biggest_drop * (f_start - f_e) * (f_start - f_e);
      if (t < 0.0) {
        res.f = line_minimize(f, res.x, new_dir, res.f, config, res.evaluations);
        dirs[biggest_idx] = dirs[n - 1];
        dirs[n - 1] = new_dir;
      }
    }
  }
  return res;
}

}  // namespace csqaoa
