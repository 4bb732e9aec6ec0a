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

#include <cmath>
#include <string>
#include <vector>

#include "rmtk/correlations.hpp"
#include "rmtk/ensembles_mc.hpp"
#include "rmtk/superint.hpp"

namespace rmtk::verify {

struct CheckResult {
  std::string name;
  double expected;
  double got;
  double tol;
  bool pass;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;

  void add(std::string name, double expected, double got, double tol) {
    checks.push_back({std::move(name), expected, got, tol,
                      std::abs(got - expected) <= tol});
  }

  int total() const { return static_cast<int>(checks.size()); }
  int failed() const {
    int f = 0;
    for (const auto& c : checks) f += c.pass ? 0 : 1;
    return f;
  }
  bool all_pass() const { return failed() == 0; }

  void append(const SuiteResult& other) {
    for (const auto& c : other.checks) checks.push_back(c);
  }
};

/// Golden integration constants: c_0, c_1 (anchored by the reduced angular
/// integral), c_3/c_5/c_7 by the recursion, and omega_1(0) by the
/// independent finite-eta 2D quadrature.
inline SuiteResult run_constants(const quad::QuadratureSpec& user_spec = {}) {
  SuiteResult r{"constants", {}};
  quad::QuadratureSpec spec = user_spec.with_tol(1e-12, 1e-12);
  spec.eta_ladder = user_spec.eta_ladder;

  r.add("c_0", 0.0, superint::goe_constant(0), 0.0);
  const double c1 = superint::goe_constant_1_from_integral(spec);
  r.add("c_1", superint::goe_constant(1), c1, 1e-8);
  const auto c = superint::goe_constants_by_recursion(7, 0.0, c1, spec);
  for (int n : {3, 5, 7})
    r.add("c_" + std::to_string(n) + "_recursion", superint::goe_constant(n), c[n], 1e-8);
  const double golden = -8.0 * special::pi + 4.0 * std::sqrt(2.0) * special::pi;
  r.add("omega_1(0)_finite_eta_2d", golden,
        superint::omega1_origin_finite_eta(user_spec), 1e-6);
  return r;
}

/// Main-theorem closure: the superspace eigenvalue-integral route equals the
/// analytic kernel on an off-diagonal grid.
inline SuiteResult run_superint(int beta, int n_levels,
                                const quad::QuadratureSpec& spec = {},
                                double tol = 1e-7) {
  SuiteResult r{"superint", {}};
  const double grid[5] = {-1.5, -0.75, 0.0, 0.75, 1.5};
  double worst = 0.0;
  for (double xp : grid) {
    for (double xq : grid) {
      if (xp == xq) continue;
      const double got = superint::kernel_from_superint(beta, n_levels, xp, xq, spec);
      const double want = kernels::kernel(beta, n_levels, xq, xp);
      worst = std::max(worst, std::abs(got - want));
    }
  }
  r.add("closure_beta" + std::to_string(beta) + "_N" + std::to_string(n_levels), 0.0,
        worst, tol);
  return r;
}

/// Stochastic route: kernel_mc brackets the analytic kernel within three
/// propagated standard errors on a set of well-separated pairs.
inline SuiteResult run_mc(const mc::MCConfig& cfg) {
  SuiteResult r{"mc", {}};
  const std::vector<std::pair<double, double>> pairs{
      {0.8, -0.3}, {0.5, -0.5}, {1.2, 0.3}, {-0.2, -1.0}, {0.9, 0.1}};
  const auto kvs = mc::kernel_mc_grid(cfg, pairs);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const double want =
        kernels::kernel(cfg.ensemble.beta, cfg.ensemble.n_levels, pairs[i].second,
                        pairs[i].first);
    r.add("mc_beta" + std::to_string(cfg.ensemble.beta) + "_N" +
              std::to_string(cfg.ensemble.n_levels) + "_pair" + std::to_string(i),
          want, kvs[i].value, 3.0 * kvs[i].uncertainty);
  }
  return r;
}

/// Identity suite: the omega pair relations, the vanishing constant-recursion
/// right side, the stepping identity of the convolutions, and
/// Christoffel-Darboux.
inline SuiteResult run_recursions(const quad::QuadratureSpec& user_spec = {}) {
  SuiteResult r{"recursions", {}};
  quad::QuadratureSpec spec = user_spec.with_tol(1e-12, 1e-12);

  const auto rep = superint::recursion_suite(12, spec);
  for (const auto& item : rep.items) r.add(item.name, 0.0, item.residual, item.tol);

  // Stepping identity with an independent quadrature value on one side.
  double worst_step = 0.0;
  for (int n : {8, 20, 32, 40}) {
    for (double x : {0.3, -0.8}) {
      auto [lo, hi] = quad::gaussian_window(0.0, 1.0, n + 1);
      const double upper = quad::integrate(
          [&](double t) { return special::osc_wavefunction(n + 1, t); }, x,
          std::max(hi, x), spec);
      const double lower = quad::integrate(
          [&](double t) { return special::osc_wavefunction(n + 1, t); },
          std::min(lo, x), x, spec);
      const double conv_quad = 0.5 * (lower - upper);
      const double resid = std::sqrt(0.5 * n) * special::eps_convolution(n - 1, x) -
                           special::osc_wavefunction(n, x) -
                           std::sqrt(0.5 * (n + 1.0)) * conv_quad;
      worst_step = std::max(worst_step, std::abs(resid));
    }
  }
  r.add("stepping_identity_orders<=40", 0.0, worst_step, 1e-10);

  double worst_cd = 0.0;
  for (int n = 1; n <= 30; ++n) {
    for (double xp : {-1.3, 0.2, 2.1}) {
      const double xq = 0.7;
      const double lhs = (xp - xq) * kernels::kernel_gue(n, xp, xq);
      const double rhs =
          std::sqrt(0.5 * n) *
          (special::osc_wavefunction(n, xp) * special::osc_wavefunction(n - 1, xq) -
           special::osc_wavefunction(n - 1, xp) * special::osc_wavefunction(n, xq));
      worst_cd = std::max(worst_cd, std::abs(lhs - rhs));
    }
  }
  r.add("christoffel_darboux_N<=30", 0.0, worst_cd, 1e-9);
  return r;
}

/// Desk-scale union of the suites.
inline SuiteResult run_all(const mc::MCConfig& mc_cfg, const quad::QuadratureSpec& spec = {}) {
  SuiteResult r{"all", {}};
  r.append(run_constants(spec));
  for (int beta : {1, 2, 4}) {
    const int n_max = beta == 4 ? 4 : 8;
    for (int n = 1; n <= n_max; ++n) r.append(run_superint(beta, n, spec));
  }
  mc::MCConfig cfg = mc_cfg;
  for (int beta : {1, 2, 4}) {
    cfg.ensemble = kernels::EnsembleSpec(beta, beta == 4 ? 2 : 4);
    r.append(run_mc(cfg));
  }
  r.append(run_recursions(spec));
  return r;
}

}  // namespace rmtk::verify
