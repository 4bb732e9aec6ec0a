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
#include <complex>

#include "rmtk/jet.hpp"
#include "rmtk/special.hpp"

using namespace rmtk;
using cplx = std::complex<double>;

TEST_CASE("exp jet of the bare variable gives 1/k!") {
  auto j = jet::Jet::variable(0.0, 9).exp();
  double fact = 1.0;
  for (std::size_t k = 0; k < 9; ++k) {
    if (k > 0) fact *= k;
    CHECK(j[k].real() == doctest::Approx(1.0 / fact).epsilon(1e-14));
    CHECK(j[k].imag() == 0.0);
  }
}

TEST_CASE("gaussian shift jet matches Hermite coefficients") {
  // exp(-(s+x)^2) = sum_j (-1)^j H_j(x) e^{-x^2} / j! s^j
  const double x = 0.7;
  auto g = jet::gaussian_shift(x, 9);
  double fact = 1.0;
  for (int j = 0; j < 9; ++j) {
    if (j > 0) fact *= j;
    const double expected =
        ((j % 2 == 0) ? 1.0 : -1.0) * special::hermite(j, x) * std::exp(-x * x) / fact;
    CHECK(g[j].real() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(g[j].imag()) < 1e-15);
  }
}

TEST_CASE("multiplication and division invert each other") {
  jet::Jet a(7), b(7);
  for (int i = 0; i < 7; ++i) {
    a[i] = cplx(0.3 * i - 0.5, 0.1 * i);
    b[i] = cplx(1.1 - 0.2 * i, 0.05 * i * i);
  }
  auto c = (a * b) / b;
  for (int i = 0; i < 7; ++i) CHECK(std::abs(c[i] - a[i]) < 1e-13);
}

TEST_CASE("division by a zero constant term throws") {
  jet::Jet a(4), b(4);
  b[1] = 1.0;
  CHECK_THROWS_AS(a / b, jet::InsufficientJetOrder);
}

TEST_CASE("size mismatch throws") {
  jet::Jet a(4), b(5);
  CHECK_THROWS_AS(a + b, jet::InsufficientJetOrder);
}

TEST_CASE("pole cancel series coefficients") {
  const int n = 5;
  const cplx tau(0.3, 0.2);
  auto p = jet::pole_cancel_series(n, tau, n);
  for (int m = 0; m < n; ++m) {
    cplx expected = -std::pow(tau, n - 1 - m);
    CHECK(std::abs(p[m] - expected) < 1e-14);
  }
  // Truncated series approximates tau^n / (s - tau) for small s.
  const cplx s(0.02, 0.0);
  cplx poly{};
  for (int m = n - 1; m >= 0; --m) poly = poly * s + p[m];
  cplx exact = std::pow(tau, n) / (s - tau);
  CHECK(std::abs(poly - exact) < 1e-7);
}

TEST_CASE("pole cancel series stays finite as tau -> 0") {
  auto p = jet::pole_cancel_series(4, cplx(0.0, 0.0), 4);
  CHECK(p[3] == cplx(-1.0, 0.0));
  for (int m = 0; m < 3; ++m) CHECK(p[m] == cplx(0.0, 0.0));
}
