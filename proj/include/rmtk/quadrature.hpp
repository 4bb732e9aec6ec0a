/*
 * Copyright 2026 The rmtk authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace rmtk::quad {

class QuadratureFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tolerances and budgets for the adaptive integrators, plus the descending
/// eta ladder used by the finite-eta pole validators (see superint.hpp).
struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 4000;
  std::vector<double> eta_ladder = default_eta_ladder();

  static std::vector<double> default_eta_ladder() {
    std::vector<double> ladder;
    double eta = 0.42;
    for (int i = 0; i < 10; ++i) {
      ladder.push_back(eta);
      eta *= 0.8;
    }
    return ladder;
  }

  QuadratureSpec with_tol(double abs_t, double rel_t) const {
    QuadratureSpec s = *this;
    s.abs_tol = abs_t;
    s.rel_tol = rel_t;
    return s;
  }
};

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes by Newton iteration on the Legendre recurrence, weights from the
/// derivative. Accurate to machine precision for the orders used here.
inline GaussRule gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

namespace detail {

inline const GaussRule& rule_low() {
  static const GaussRule r = gauss_legendre(12);
  return r;
}
inline const GaussRule& rule_high() {
  static const GaussRule r = gauss_legendre(25);
  return r;
}

template <class T>
double err_norm(const T& v) {
  return std::abs(v);
}

template <class R, class F>
void eval_panel(F& f, double a, double b, R& value, double& error, double& l1) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  R lo{};
  R hi{};
  double mass = 0.0;
  for (std::size_t i = 0; i < rule_low().nodes.size(); ++i)
    lo += rule_low().weights[i] * f(mid + half * rule_low().nodes[i]);
  for (std::size_t i = 0; i < rule_high().nodes.size(); ++i) {
    const R fv = f(mid + half * rule_high().nodes[i]);
    hi += rule_high().weights[i] * fv;
    mass += rule_high().weights[i] * err_norm(fv);
  }
  value = half * hi;
  error = err_norm(R(half * (hi - lo)));
  l1 = half * mass;
}

// Error below the roundoff floor of the panel's L1 mass cannot be resolved;
// clamp the estimate so roundoff-limited panels stop being split.
inline double noise_floor(double l1) { return 20.0 * 2.220446049250313e-16 * l1; }

}  // namespace detail

/// Globally adaptive integration of f over [a, b]. Works for real and
/// complex integrands. Throws QuadratureFailure when the subdivision budget
/// is exhausted before the tolerance is met.
template <class F>
auto integrate(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
  using R = std::remove_cvref_t<std::invoke_result_t<F&, double>>;
  struct Panel {
    double a, b, err, l1;
    R val;
    double resolvable() const { return std::max(err - detail::noise_floor(l1), 0.0); }
  };
  auto worse = [](const Panel& p, const Panel& q) {
    return p.resolvable() < q.resolvable();
  };

  std::vector<Panel> heap;
  const int n_init = 8;
  for (int i = 0; i < n_init; ++i) {
    Panel p;
    p.a = a + (b - a) * i / n_init;
    p.b = a + (b - a) * (i + 1) / n_init;
    detail::eval_panel<R>(f, p.a, p.b, p.val, p.err, p.l1);
    heap.push_back(p);
    std::push_heap(heap.begin(), heap.end(), worse);
  }

  for (;;) {
    R total{};
    double resolvable = 0.0;
    for (const auto& p : heap) {
      total += p.val;
      resolvable += p.resolvable();
    }
    if (resolvable <= std::max(spec.abs_tol, spec.rel_tol * detail::err_norm(total)))
      return total;
    if (static_cast<int>(heap.size()) >= spec.max_subdivisions)
      throw QuadratureFailure("adaptive quadrature: subdivision budget exhausted (err=" +
                              std::to_string(resolvable) + ")");
    std::pop_heap(heap.begin(), heap.end(), worse);
    Panel worst = heap.back();
    heap.pop_back();
    Panel left, right;
    left.a = worst.a;
    left.b = 0.5 * (worst.a + worst.b);
    right.a = left.b;
    right.b = worst.b;
    detail::eval_panel<R>(f, left.a, left.b, left.val, left.err, left.l1);
    detail::eval_panel<R>(f, right.a, right.b, right.val, right.err, right.l1);
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), worse);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), worse);
  }
}

/// Integrate over a union of segments defined by breakpoints; each segment
/// gets its own adaptive budget. Used for integrands with kinks (|v|, eps).
template <class F>
auto integrate_segments(F&& f, const std::vector<double>& breaks,
                        const QuadratureSpec& spec = {}) {
  using R = std::remove_cvref_t<std::invoke_result_t<F&, double>>;
  R total{};
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    total += integrate(f, breaks[i], breaks[i + 1], spec);
  return total;
}

/// Window wide enough that exp(-t^2/(2 sigma^2)) * t^degree is negligible
/// outside [center - r, center + r] at double precision.
inline std::pair<double, double> gaussian_window(double center, double sigma,
                                                 int degree) {
  double r = sigma * (std::sqrt(2.0 * std::max(degree, 1)) + 9.0);
  return {center - r, center + r};
}

/// Polynomial extrapolation of samples (x_i, y_i) to x = 0 (Neville table).
/// Returns the extrapolated value and a crude error estimate from the last
/// column difference.
template <class R>
std::pair<R, double> neville_zero(const std::vector<double>& xs,
                                  const std::vector<R>& ys) {
  if (xs.size() != ys.size() || xs.empty())
    throw std::invalid_argument("neville_zero: bad input sizes");
  std::vector<R> t = ys;
  R prev = t[0];
  const std::size_t n = xs.size();
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t i = 0; i + m < n; ++i) {
      t[i] = ((-xs[i + m]) * t[i] + xs[i] * t[i + 1]) / (xs[i] - xs[i + m]);
    }
    prev = (m + 1 < n) ? t[0] : prev;
  }
  double err = detail::err_norm(R(t[0] - prev));
  return {t[0], err};
}

}  // namespace rmtk::quad
