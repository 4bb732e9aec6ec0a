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
#include <complex>
#include <stdexcept>
#include <vector>

#include "rmtk/jet.hpp"
#include "rmtk/quadrature.hpp"

namespace rmtk::special {

inline constexpr double pi = 3.14159265358979323846;

namespace detail {

inline void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

inline void check_arg(double z) {
  require(std::isfinite(z), "special: argument must be finite");
}

inline void check_index(int n) { require(n >= 0, "special: index must be >= 0"); }

}  // namespace detail

/// Half the sign function; eps(0) = 0.
inline double eps(double z) { return z > 0.0 ? 0.5 : (z < 0.0 ? -0.5 : 0.0); }

/// Error function from the non-alternating series for small arguments and a
/// Lentz continued fraction for erfc beyond; accurate to ~1e-15.
inline double erf(double x) {
  if (std::isnan(x)) return x;
  const double ax = std::abs(x);
  const double sqrt_pi = std::sqrt(pi);
  if (ax <= 3.0) {
    // erf(x) = (2/sqrt(pi)) x exp(-x^2) sum_k (2 x^2)^k / (2k+1)!!
    const double x2 = x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 300; ++k) {
      term *= 2.0 * x2 / (2.0 * k + 1.0);
      sum += term;
      if (term < 1e-18 * sum) break;
    }
    return (2.0 / sqrt_pi) * x * std::exp(-x2) * sum;
  }
  if (ax >= 6.5) return x > 0 ? 1.0 : -1.0;
  // erfc(ax) = exp(-ax^2)/sqrt(pi) * 1/(ax + (1/2)/(ax + 1/(ax + (3/2)/(...))))
  const double tiny = 1e-300;
  double f = ax, C = ax, D = 0.0;
  for (int n = 1; n < 200; ++n) {
    const double a = 0.5 * n;
    D = ax + a * D;
    if (D == 0.0) D = tiny;
    C = ax + a / C;
    if (C == 0.0) C = tiny;
    D = 1.0 / D;
    const double delta = C * D;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-17) break;
  }
  const double erfc = std::exp(-ax * ax) / (sqrt_pi * f);
  return x > 0 ? 1.0 - erfc : erfc - 1.0;
}

/// Physicists' Hermite polynomial H_n by the three-term recursion.
inline double hermite(int n, double z) {
  detail::check_index(n);
  detail::check_arg(z);
  if (n == 0) return 1.0;
  double p0 = 1.0, p1 = 2.0 * z;
  for (int k = 1; k < n; ++k) {
    const double p2 = 2.0 * z * p1 - 2.0 * k * p0;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

/// Oscillator wave functions phi_0 .. phi_nmax at z via the normalized
/// recursion phi_{n+1} = sqrt(2/(n+1)) z phi_n - sqrt(n/(n+1)) phi_{n-1}.
/// Stable for n <= 1000, |z| <= 40.
inline void osc_wavefunction_all(int n_max, double z, std::vector<double>& out) {
  detail::check_index(n_max);
  detail::check_arg(z);
  out.resize(n_max + 1);
  const double phi0 = std::pow(pi, -0.25) * std::exp(-0.5 * z * z);
  out[0] = phi0;
  if (n_max == 0) return;
  out[1] = std::sqrt(2.0) * z * phi0;
  for (int n = 1; n < n_max; ++n) {
    out[n + 1] = std::sqrt(2.0 / (n + 1.0)) * z * out[n] -
                 std::sqrt(n / (n + 1.0)) * out[n - 1];
  }
}

inline double osc_wavefunction(int n, double z) {
  detail::check_index(n);
  detail::check_arg(z);
  const double phi0 = std::pow(pi, -0.25) * std::exp(-0.5 * z * z);
  if (n == 0) return phi0;
  double pm = phi0, pn = std::sqrt(2.0) * z * phi0;
  for (int k = 1; k < n; ++k) {
    const double pp = std::sqrt(2.0 / (k + 1.0)) * z * pn - std::sqrt(k / (k + 1.0)) * pm;
    pm = pn;
    pn = pp;
  }
  return pn;
}

/// d/dz phi_n(z) = sqrt(n/2) phi_{n-1} - sqrt((n+1)/2) phi_{n+1}.
inline double osc_wavefunction_deriv(int n, double z) {
  detail::check_index(n);
  std::vector<double> phi;
  osc_wavefunction_all(n + 1, z, phi);
  const double lower = (n >= 1) ? std::sqrt(0.5 * n) * phi[n - 1] : 0.0;
  return lower - std::sqrt(0.5 * (n + 1.0)) * phi[n + 1];
}

/// Integral of phi_n over the real line: 0 for odd n, and for n = 2k the
/// Gaussian moment sqrt(2) pi^{1/4} prod_{j<=k} sqrt((2j-1)/(2j)).
inline double wave_integral(int n) {
  detail::check_index(n);
  if (n % 2 == 1) return 0.0;
  double s = std::sqrt(2.0) * std::pow(pi, 0.25);
  for (int j = 1; 2 * j <= n; ++j) s *= std::sqrt((2.0 * j - 1.0) / (2.0 * j));
  return s;
}

/// Convolutions I_n(x) = int eps(x - t) phi_n(t) dt for n = 0 .. n_max.
/// Base cases through the error function and phi_0; higher orders by the
/// two-step recursion I_n = sqrt((n-1)/n) I_{n-2} - sqrt(2/n) phi_{n-1}(x).
inline void eps_convolution_all(int n_max, double x, std::vector<double>& out) {
  detail::check_index(n_max);
  detail::check_arg(x);
  out.resize(n_max + 1);
  const double phi0 = std::pow(pi, -0.25) * std::exp(-0.5 * x * x);
  out[0] = std::pow(pi, -0.25) * std::sqrt(0.5 * pi) * erf(x / std::sqrt(2.0));
  if (n_max == 0) return;
  out[1] = -std::sqrt(2.0) * phi0;
  if (n_max == 1) return;
  std::vector<double> phi;
  osc_wavefunction_all(n_max - 1, x, phi);
  for (int n = 2; n <= n_max; ++n) {
    out[n] = std::sqrt((n - 1.0) / n) * out[n - 2] - std::sqrt(2.0 / n) * phi[n - 1];
  }
}

inline double eps_convolution(int n, double x) {
  std::vector<double> buf;
  eps_convolution_all(n, x, buf);
  return buf[n];
}

/// alpha_N(x): 0 for even N, phi_{N-1}(x) / int phi_{N-1} for odd N.
inline double alpha(int n_levels, double x) {
  detail::require(n_levels >= 1, "alpha: N must be >= 1");
  detail::check_arg(x);
  if (n_levels % 2 == 0) return 0.0;
  return osc_wavefunction(n_levels - 1, x) / wave_integral(n_levels - 1);
}

/// int_0^x alpha_N(t) dt in closed form (0 for even N).
inline double alpha_antiderivative(int n_levels, double x) {
  detail::require(n_levels >= 1, "alpha_antiderivative: N must be >= 1");
  if (n_levels % 2 == 0) return 0.0;
  return eps_convolution(n_levels - 1, x) / wave_integral(n_levels - 1);
}

/// H_N(x) recovered from its singular integral representation
///   H_N(x) = ((-1)^N N! / pi) e^{x^2} Im int e^{-(xi+x)^2} / (xi - i0)^{N+1} dxi.
/// The pole is evaluated by the delta-derivative rule through a jet of the
/// Gaussian factor, so the integral collapses to the N-th Taylor coefficient.
/// Finite-eta smearing of the same integral is exercised as a validation
/// oracle in the superint module.
inline double hermite_integral_repr(int n, double x, const quad::QuadratureSpec& spec) {
  detail::check_index(n);
  detail::check_arg(x);
  (void)spec;
  const double scale =
      ((n % 2 == 0) ? 1.0 : -1.0) * std::exp(std::lgamma(n + 1.0) + x * x) / pi;
  jet::Jet g = jet::gaussian_shift(x, n + 1);
  return scale * pi * g[n].real();
}

}  // namespace rmtk::special
