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

// End-to-end acceptance: one pass/fail line per criterion.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "rmtk/correlations.hpp"
#include "rmtk/ensembles_mc.hpp"
#include "rmtk/superint.hpp"
#include "rmtk/verify.hpp"

using namespace rmtk;

namespace {

int g_failures = 0;

void report(const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// C1: golden constants from Appendix-style integral representations.
void criterion_constants() {
  const auto suite = verify::run_constants();
  double worst = 0.0;
  for (const auto& c : suite.checks)
    worst = std::max(worst, std::abs(c.got - c.expected));
  report("C1 golden constants", suite.all_pass(),
         "6 checks, worst |got-expected| = " + fmt(worst));
}

// C2: superspace route equals the analytic kernels on the off-diagonal grid.
void criterion_closure() {
  quad::QuadratureSpec spec;
  double worst = 0.0;
  bool pass = true;
  for (int beta : {1, 2, 4}) {
    const int n_max = beta == 4 ? 4 : 8;
    for (int n = 1; n <= n_max; ++n) {
      const auto suite = verify::run_superint(beta, n, spec, 1e-7);
      for (const auto& c : suite.checks) {
        worst = std::max(worst, c.got);
        pass = pass && c.pass;
      }
    }
  }
  report("C2 main-theorem closure (beta 1,2,4; N <= 8,8,4)", pass,
         "grid 5x5 off-diagonal, worst deviation = " + fmt(worst) + " (tol 1e-7)");
}

// C3: the GUE proof identity at ten scattered points, N <= 10.
void criterion_gue_identity() {
  quad::QuadratureSpec spec;
  const double pts[10][2] = {{0.5, -0.4}, {1.2, 0.3},  {-0.7, 0.9}, {0.1, -1.3},
                             {2.0, 1.1},  {-1.8, 0.2}, {0.8, 0.7},  {-0.2, -0.9},
                             {1.5, -1.2}, {0.33, 1.7}};
  double worst = 0.0;
  for (int n = 1; n <= 10; ++n) {
    const double xp = pts[n - 1][0], xq = pts[n - 1][1];
    const double lhs =
        std::exp(0.5 * (xp * xp - xq * xq)) * superint::l2_superint(n, xp, xq, spec);
    worst = std::max(worst, std::abs(lhs - kernels::kernel_gue(n, xp, xq)));
  }
  report("C3 GUE proof identity (N <= 10)", worst <= 1e-8,
         "worst deviation = " + fmt(worst) + " (tol 1e-8)");
}

// C4: the stochastic route brackets the analytic kernels within 3 sigma in
// at least 95% of 20 seeded repetitions at 1e5 samples.
void criterion_mc() {
  struct Cfg {
    int beta, n;
  };
  bool pass = true;
  std::string detail;
  for (Cfg c : {Cfg{1, 5}, Cfg{2, 4}, Cfg{4, 2}}) {
    int hits = 0, total = 0;
    for (int rep = 0; rep < 20; ++rep) {
      mc::MCConfig cfg{kernels::EnsembleSpec(c.beta, c.n), 100000,
                       1000u + static_cast<std::uint64_t>(rep), 0.0, 2};
      const auto suite = verify::run_mc(cfg);
      for (const auto& ch : suite.checks) {
        ++total;
        hits += ch.pass ? 1 : 0;
      }
    }
    const double rate = double(hits) / total;
    pass = pass && (rate >= 0.95);
    detail += "beta=" + std::to_string(c.beta) + ": " + std::to_string(hits) + "/" +
              std::to_string(total) + "  ";
  }
  report("C4 MC route 3-sigma bracketing (20 reps x 5 pairs)", pass, detail);
}

// C5: correlation assembly checks.
void criterion_correlations() {
  using correlations::EnergyTuple;
  bool pass = true;
  std::string detail;

  // Dual assembly equivalence, both parities for the GOE.
  double worst = 0.0;
  for (int n = 2; n <= 6; ++n) {
    for (const auto& xs : {EnergyTuple({0.3, -0.4}), EnergyTuple({0.3, -0.4, 1.1})}) {
      const double a = correlations::qdet(correlations::goe_matrix(n, xs));
      const double b = correlations::qdet(correlations::goe_matrix_mehta(n, xs));
      worst = std::max(worst, std::abs(a - b));
    }
  }
  for (int n = 1; n <= 3; ++n) {
    for (const auto& xs : {EnergyTuple({0.3, -0.4}), EnergyTuple({0.2, -0.5, 0.9})}) {
      const double a = correlations::qdet(correlations::gse_matrix(n, xs));
      const double b = correlations::qdet(correlations::gse_matrix_mehta(n, xs));
      worst = std::max(worst, std::abs(a - b));
    }
  }
  pass = pass && (worst <= 1e-8);
  detail += "dual-assembly worst = " + fmt(worst) + "  ";

  // R_1 normalization for the three ensembles.
  quad::QuadratureSpec spec;
  spec.abs_tol = 1e-9;
  spec.rel_tol = 1e-9;
  double worst_norm = 0.0;
  for (auto [beta, n] : {std::pair<int, int>{1, 3}, {2, 4}, {4, 2}}) {
    const double mass = quad::integrate(
        [beta = beta, n = n](double x) { return kernels::level_density(beta, n, x); },
        -12.0, 12.0, spec);
    worst_norm = std::max(worst_norm, std::abs(mass - n));
  }
  pass = pass && (worst_norm <= 1e-6);
  detail += "R1 mass worst = " + fmt(worst_norm) + "  ";

  // GUE k=2 against a Monte Carlo eigenvalue-pair histogram, N=2.
  {
    kernels::EnsembleSpec es(2, 2);
    const int S = 10000;
    const double cells[2][2] = {{0.3, -0.4}, {1.0, -1.0}};
    const double half = 0.15;
    double worst_pull = 0.0;
    for (const auto& cell : cells) {
      double sum = 0.0, sumsq = 0.0;
      for (int s = 0; s < S; ++s) {
        const auto eigs = mc::sample_eigenvalues(es, 97, s);
        int count = 0;
        for (double a : eigs)
          for (double b : eigs) {
            if (&a == &b) continue;
            if (std::abs(a - cell[0]) <= half && std::abs(b - cell[1]) <= half) ++count;
          }
        sum += count;
        sumsq += double(count) * count;
      }
      // Cell-averaged R_2 by 3x3 Simpson.
      const double w[3] = {1.0 / 6.0, 4.0 / 6.0, 1.0 / 6.0};
      double r2_cell = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          const double x = cell[0] + (i - 1) * half;
          const double y = cell[1] + (j - 1) * half;
          r2_cell += w[i] * w[j] *
                     correlations::r_k_gue(2, correlations::EnergyTuple({x, y}));
        }
      const double expect = r2_cell * (2.0 * half) * (2.0 * half);
      const double mean = sum / S;
      const double se = std::sqrt((sumsq - sum * sum / S) / (S - 1.0) / S);
      worst_pull = std::max(worst_pull, std::abs(mean - expect) / se);
    }
    pass = pass && (worst_pull <= 3.0);
    detail += "pair-histogram worst pull = " + fmt(worst_pull);
  }

  report("C5 correlation assembly", pass, detail);
}

// C6: identity suite (omega recursions, stepping identity, Christoffel-Darboux).
void criterion_identities() {
  const auto suite = verify::run_recursions();
  double worst_ratio = 0.0;
  for (const auto& c : suite.checks)
    if (c.tol > 0.0) worst_ratio = std::max(worst_ratio, std::abs(c.got) / c.tol);
  report("C6 identity suite", suite.all_pass(),
         std::to_string(suite.total()) + " checks, worst residual at " +
             fmt(worst_ratio * 100.0) + "% of tolerance");
}

// C7: byte-identical MC output for different worker counts.
void criterion_determinism() {
  auto run = [](const std::string& args) {
    const std::string cmd = std::string(RMTK_CLI_PATH) + " " + args;
    FILE* pipe = popen(cmd.c_str(), "r");
    std::string out;
    if (pipe) {
      char buf[4096];
      while (std::size_t n = std::fread(buf, 1, sizeof(buf), pipe)) out.append(buf, n);
      pclose(pipe);
    }
    return out;
  };
  const std::string base =
      "kernel --beta 4 --n 2 --xp 0.6 --xq -0.3 --method mc --samples 20000 --seed 42";
  const std::string a = run(base + " --workers 1");
  const std::string b = run(base + " --workers 2");
  const std::string c = run(base + " --workers 1");
  report("C7 determinism across worker counts", !a.empty() && a == b && b == c,
         "three runs, " + std::to_string(a.size()) + " bytes each");
}

}  // namespace

int main() {
  criterion_constants();
  criterion_closure();
  criterion_gue_identity();
  criterion_mc();
  criterion_correlations();
  criterion_identities();
  criterion_determinism();
  std::printf("%d of 7 criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
