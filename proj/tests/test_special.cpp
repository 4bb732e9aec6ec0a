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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "rmtk/quadrature.hpp"
#include "rmtk/special.hpp"

using namespace rmtk;

namespace {

// Independent oracle: Hermite polynomial in extended precision via the raw
// recursion, and the oscillator wave function from its defining formula.
long double hermite_ld(int n, long double z) {
  if (n == 0) return 1.0L;
  long double p0 = 1.0L, p1 = 2.0L * z;
  for (int k = 1; k < n; ++k) {
    long double p2 = 2.0L * z * p1 - 2.0L * k * p0;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

long double osc_direct_ld(int n, long double z) {
  const long double pi_l = 3.14159265358979323846264338328L;
  long double fact = 1.0L;
  for (int k = 2; k <= n; ++k) fact *= k;
  long double norm = std::sqrt(std::pow(2.0L, (long double)n) * fact * std::sqrt(pi_l));
  return hermite_ld(n, z) * std::exp(-0.5L * z * z) / norm;
}

// Brute-force eps-convolution by split adaptive quadrature.
double eps_convolution_quad(int n, double x) {
  quad::QuadratureSpec spec;
  spec.abs_tol = 1e-13;
  spec.rel_tol = 1e-13;
  auto [lo, hi] = quad::gaussian_window(0.0, 1.0, n);
  auto f = [&](double t) { return special::osc_wavefunction(n, t); };
  double left = quad::integrate(f, std::min(lo, x), x, spec);
  double right = quad::integrate(f, x, std::max(hi, x), spec);
  return 0.5 * (left - right);
}

}  // namespace

TEST_CASE("erf agrees with the standard library") {
  for (double x : {0.0, 1e-12, 0.3, -0.3, 1.0, -1.7, 2.49, -2.51, 3.0, 3.5, -4.2, 5.0,
                   -6.0, 6.6, -9.0}) {
    CHECK(std::abs(special::erf(x) - std::erf(x)) < 1e-15);
  }
}

TEST_CASE("hermite polynomial values") {
  CHECK(special::hermite(0, 1.7) == 1.0);
  CHECK(special::hermite(1, 0.5) == 1.0);
  CHECK(special::hermite(3, 2.0) == doctest::Approx(40.0).epsilon(1e-14));
  CHECK_THROWS(special::hermite(-1, 0.0));
  CHECK_THROWS(special::hermite(2, std::nan("")));
}

TEST_CASE("hermite recursion residual stays tiny") {
  for (int n = 1; n <= 60; ++n) {
    for (double z = -6.0; z <= 6.0; z += 0.75) {
      const double r = special::hermite(n + 1, z) - 2.0 * z * special::hermite(n, z) +
                       2.0 * n * special::hermite(n - 1, z);
      CHECK(std::abs(r) <= 1e-10 * std::max(1.0, std::abs(special::hermite(n + 1, z))));
    }
  }
}

TEST_CASE("oscillator wave function values") {
  CHECK(special::osc_wavefunction(0, 0.0) ==
        doctest::Approx(0.7511255444649425).epsilon(1e-15));
  CHECK(special::osc_wavefunction(1, 0.0) == 0.0);
  const double got = special::osc_wavefunction(5, 1.3);
  const double expected = static_cast<double>(osc_direct_ld(5, 1.3L));
  CHECK(got == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("oscillator wave functions are orthonormal") {
  quad::QuadratureSpec spec;
  spec.abs_tol = 1e-11;
  spec.rel_tol = 1e-11;
  auto [lo, hi] = quad::gaussian_window(0.0, 1.0, 20);
  for (int m = 0; m <= 20; m += 4) {
    for (int n = m; n <= 20; n += 4) {
      double overlap = quad::integrate(
          [&](double t) {
            return special::osc_wavefunction(m, t) * special::osc_wavefunction(n, t);
          },
          lo, hi, spec);
      CHECK(std::abs(overlap - (m == n ? 1.0 : 0.0)) < 1e-8);
    }
  }
}

TEST_CASE("wave function ladder derivative") {
  for (int n : {0, 3, 10}) {
    for (double z : {-1.2, 0.4, 2.0}) {
      const double h = 1e-5;
      const double fd = (special::osc_wavefunction(n, z + h) -
                         special::osc_wavefunction(n, z - h)) /
                        (2.0 * h);
      CHECK(std::abs(special::osc_wavefunction_deriv(n, z) - fd) < 1e-8);
    }
  }
}

TEST_CASE("eps step function") {
  CHECK(special::eps(3.2) == 0.5);
  CHECK(special::eps(-1e-12) == -0.5);
  CHECK(special::eps(0.0) == 0.0);
}

TEST_CASE("wave integrals match quadrature") {
  CHECK(special::wave_integral(0) ==
        doctest::Approx(std::sqrt(2.0) * std::pow(special::pi, 0.25)).epsilon(1e-15));
  CHECK(special::wave_integral(3) == 0.0);
  quad::QuadratureSpec spec;
  spec.abs_tol = 1e-12;
  for (int n : {2, 4, 8, 14}) {
    auto [lo, hi] = quad::gaussian_window(0.0, 1.0, n);
    double got = quad::integrate(
        [&](double t) { return special::osc_wavefunction(n, t); }, lo, hi, spec);
    CHECK(special::wave_integral(n) == doctest::Approx(got).epsilon(1e-11));
  }
}

TEST_CASE("eps convolution base cases and quadrature oracle") {
  // n = 1, x = 0 from the spec's quadrature oracle.
  const double got = special::eps_convolution(1, 0.0);
  CHECK(got == doctest::Approx(eps_convolution_quad(1, 0.0)).epsilon(1e-11));
  CHECK(got == doctest::Approx(-std::sqrt(2.0) * special::osc_wavefunction(0, 0.0))
                   .epsilon(1e-14));
  for (int n : {0, 2, 3, 6, 13}) {
    for (double x : {-1.1, 0.0, 0.7, 2.3}) {
      CHECK(special::eps_convolution(n, x) ==
            doctest::Approx(eps_convolution_quad(n, x)).epsilon(1e-10));
    }
  }
}

TEST_CASE("eps convolution derivative is the wave function") {
  for (int n : {0, 1, 2, 7, 16}) {
    for (double x : {-1.5, 0.2, 1.0}) {
      const double h = 1e-5;
      const double fd =
          (special::eps_convolution(n, x + h) - special::eps_convolution(n, x - h)) /
          (2.0 * h);
      CHECK(std::abs(fd - special::osc_wavefunction(n, x)) < 1e-6);
    }
  }
}

TEST_CASE("eps convolution stepping identity against quadrature") {
  for (int n : {4, 11, 25, 39}) {
    for (double x : {0.3, -0.8}) {
      const double lhs = std::sqrt(0.5 * n) * special::eps_convolution(n - 1, x);
      const double rhs = special::osc_wavefunction(n, x) +
                         std::sqrt(0.5 * (n + 1.0)) * eps_convolution_quad(n + 1, x);
      CHECK(std::abs(lhs - rhs) < 1e-10);
    }
  }
}

TEST_CASE("eps convolution tails and parity") {
  CHECK(std::abs(special::eps_convolution(7, 9.0)) < 1e-12);
  for (int n : {0, 1, 4, 9}) {
    const double x = 0.83;
    const double sign = (n % 2 == 0) ? -1.0 : 1.0;
    CHECK(special::eps_convolution(n, -x) ==
          doctest::Approx(sign * special::eps_convolution(n, x)).epsilon(1e-13));
  }
}

TEST_CASE("alpha function") {
  CHECK(special::alpha(4, 0.7) == 0.0);
  CHECK(special::alpha(1, 0.0) ==
        doctest::Approx(1.0 / std::sqrt(2.0 * special::pi)).epsilon(1e-14));
  // alpha_N integrates to one by construction.
  quad::QuadratureSpec spec;
  spec.abs_tol = 1e-11;
  auto [lo, hi] = quad::gaussian_window(0.0, 1.0, 2);
  double mass =
      quad::integrate([](double t) { return special::alpha(3, t); }, lo, hi, spec);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("alpha antiderivative") {
  quad::QuadratureSpec spec;
  spec.abs_tol = 1e-12;
  for (double x : {-0.9, 0.4, 1.6}) {
    double direct =
        quad::integrate([](double t) { return special::alpha(5, t); }, 0.0, x, spec);
    CHECK(special::alpha_antiderivative(5, x) == doctest::Approx(direct).epsilon(1e-10));
  }
  CHECK(special::alpha_antiderivative(6, 1.0) == 0.0);
}

TEST_CASE("hermite integral representation agrees with the recursion") {
  quad::QuadratureSpec spec;
  CHECK(std::abs(special::hermite_integral_repr(0, 0.0, spec) - 1.0) < 1e-10);
  CHECK(std::abs(special::hermite_integral_repr(2, 1.0, spec) - 2.0) < 1e-10);
  CHECK(std::abs(special::hermite_integral_repr(4, 0.3, spec) -
                 special::hermite(4, 0.3)) < 1e-8);
  for (int n = 0; n <= 10; ++n) {
    for (double x : {0.0, 0.4, -1.1}) {
      const double h = special::hermite(n, x);
      CHECK(std::abs(special::hermite_integral_repr(n, x, spec) - h) <=
            1e-11 * std::max(1.0, std::abs(h)));
    }
  }
}

// The finite-eta smearing oracle for the pole rule lives with the superint
// suite, which validates the same representation for pole orders up to 9.
