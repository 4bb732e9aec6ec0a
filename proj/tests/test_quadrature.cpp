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

#include "rmtk/quadrature.hpp"

using namespace rmtk;

TEST_CASE("gauss-legendre rule is exact for polynomials up to 2n-1") {
  auto rule = quad::gauss_legendre(12);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    sum += rule.weights[i] * std::pow(rule.nodes[i], 22);
  CHECK(sum == doctest::Approx(2.0 / 23.0).epsilon(1e-13));

  double w = 0.0;
  for (double wi : rule.weights) w += wi;
  CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("adaptive integration on smooth integrands") {
  quad::QuadratureSpec spec;
  spec.abs_tol = 1e-13;
  spec.rel_tol = 1e-13;

  CHECK(quad::integrate([](double x) { return x * x; }, 0.0, 1.0, spec) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-13));

  const double sqrt_pi = std::sqrt(3.14159265358979323846);
  CHECK(quad::integrate([](double t) { return std::exp(-t * t); }, -6.5, 6.5, spec) ==
        doctest::Approx(sqrt_pi).epsilon(1e-13));
}

TEST_CASE("adaptive integration of an oscillatory gaussian") {
  quad::QuadratureSpec spec;
  spec.abs_tol = 1e-14;
  spec.rel_tol = 1e-12;
  double got = quad::integrate(
      [](double t) { return std::cos(10.0 * t) * std::exp(-t * t); }, -8.0, 8.0, spec);
  const double expected = std::sqrt(3.14159265358979323846) * std::exp(-25.0);
  CHECK(std::abs(got - expected) < 5e-14);
}

TEST_CASE("complex-valued integrand") {
  quad::QuadratureSpec spec;
  spec.abs_tol = 1e-12;
  auto got = quad::integrate(
      [](double t) {
        return std::exp(std::complex<double>(0.0, 2.0 * t)) * std::exp(-t * t);
      },
      -7.0, 7.0, spec);
  // int exp(-t^2 + 2it) dt = sqrt(pi) e^{-1}
  const double expected = std::sqrt(3.14159265358979323846) * std::exp(-1.0);
  CHECK(got.real() == doctest::Approx(expected).epsilon(1e-11));
  CHECK(std::abs(got.imag()) < 1e-11);
}

TEST_CASE("segments handle kinks") {
  quad::QuadratureSpec spec;
  spec.abs_tol = 1e-13;
  double got =
      quad::integrate_segments([](double t) { return std::abs(t); }, {-1.0, 0.0, 1.0}, spec);
  CHECK(got == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("budget exhaustion raises QuadratureFailure") {
  quad::QuadratureSpec spec;
  spec.abs_tol = 1e-13;
  spec.rel_tol = 1e-13;
  spec.max_subdivisions = 20;
  CHECK_THROWS_AS(
      quad::integrate([](double x) { return std::pow(std::abs(x - 0.3), -0.4); }, 0.0,
                      1.0, spec),
      quad::QuadratureFailure);
}

TEST_CASE("neville extrapolation to zero") {
  std::vector<double> xs{0.5, 0.4, 0.32, 0.256, 0.2048, 0.16384};
  std::vector<double> ys;
  for (double x : xs) ys.push_back(3.0 - 2.0 * x + x * x * x);
  auto [v, err] = quad::neville_zero(xs, ys);
  CHECK(v == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(err < 1e-10);
}

TEST_CASE("gaussian window covers high-degree integrands") {
  auto [lo, hi] = quad::gaussian_window(0.0, 1.0, 40);
  quad::QuadratureSpec spec;
  spec.abs_tol = 1e-16;
  spec.rel_tol = 1e-12;
  // Moment int t^40 exp(-t^2/2) dt = 39!! sqrt(2 pi).
  double expected = std::sqrt(2.0 * 3.14159265358979323846);
  for (int j = 1; 2 * j <= 40; ++j) expected *= 2.0 * j - 1.0;
  double got = quad::integrate(
      [](double t) { return std::pow(t, 40) * std::exp(-0.5 * t * t); }, lo, hi, spec);
  CHECK(got == doctest::Approx(expected).epsilon(1e-11));
}
