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
#include <string>
#include <vector>

#include "rmtk/jet.hpp"
#include "rmtk/kernels.hpp"
#include "rmtk/quadrature.hpp"
#include "rmtk/special.hpp"

namespace rmtk::superint {

using cplx = std::complex<double>;
using jet::Jet;

// --- the singular pole functional ----------------------------------------
//
// Im(1/(s - i0)^N) = pi (-1)^{N-1} delta^{(N-1)}(s) / (N-1)!, so the integral
// against a smooth g collapses to pi times the (N-1)-th Taylor coefficient
// of g. This delta-derivative rule is the production path for every pole
// integral; the finite-eta machinery below is its independent validator.

inline cplx pole_functional(int order, const Jet& g) {
  if (order < 1) throw std::invalid_argument("pole_functional: order >= 1");
  if (g.size() < static_cast<std::size_t>(order))
    throw jet::InsufficientJetOrder("pole_functional: jet too short");
  return special::pi * g[order - 1];
}

/// Real-analytic version of the functional for real-coefficient jets.
inline double im_pole_functional(int order, const Jet& g) {
  const cplx v = pole_functional(order, g);
  if (std::abs(v.imag()) > 1e-9 * std::max(1.0, std::abs(v.real())))
    throw std::invalid_argument("im_pole_functional: jet is not real-analytic");
  return v.real();
}

// --- finite-eta validation -------------------------------------------------

namespace detail {

// Window moment int_{-w}^{w} s^m / (s - i eta)^N ds in closed form
// (substitute u = s - i eta and expand the binomial; m <= N-2 keeps all
// exponents below -1, so no logarithm appears).
inline cplx pole_window_moment(int m, int order, double eta, double w) {
  cplx total = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= m; ++j) {
    if (j > 0) binom *= static_cast<double>(m - j + 1) / j;
    const int e = j - order + 1;  // exponent + 1 after integration
    const cplx hi = std::pow(cplx(w, -eta), e);
    const cplx lo = std::pow(cplx(-w, -eta), e);
    total += binom * std::pow(cplx(0.0, eta), m - j) * (hi - lo) / static_cast<double>(e);
  }
  return total;
}

}  // namespace detail

/// int e^{-(s+shift)^2} Im(1/(s - i eta)^order) ds at finite eta, the
/// smeared counterpart of the delta-derivative rule for the shifted-Gaussian
/// family every pole integral in this module reduces to.
///
/// Two exact transformations keep the quadrature noise at bay:
///  - integration by parts brings the pole order down to at most 4 (the
///    Gaussian derivatives are Hermite polynomials times the Gaussian);
///  - inside |s| <= 1 the Taylor polynomial of the reduced factor through
///    order-2 is subtracted and restored by closed-form window moments.
/// Without these the integrand magnitudes eta^{-(order-1)} push the
/// achievable absolute accuracy above the roundoff floor.
inline double gaussian_pole_finite_eta(int order, double shift, double eta,
                                       const quad::QuadratureSpec& spec) {
  if (order < 1) throw std::invalid_argument("gaussian_pole_finite_eta: order >= 1");
  if (!(eta > 0.0)) throw std::invalid_argument("gaussian_pole_finite_eta: eta > 0");
  const int steps = std::max(0, order - 4);
  const int m = order - steps;
  const double amp = std::exp(std::lgamma(static_cast<double>(order - steps)) -
                              std::lgamma(static_cast<double>(order)));

  // Taylor coefficients of the steps-th derivative from a longer Gaussian jet.
  const Jet full = jet::gaussian_shift(shift, order + 4);
  std::vector<double> taylor_coeffs(std::max(m - 1, 1), 0.0);
  for (int j = 0; j + 1 <= m - 1; ++j) {
    double fact = 1.0;
    for (int t = 1; t <= steps; ++t) fact *= j + t;
    taylor_coeffs[j] = full[j + steps].real() * fact;
  }

  const double sign = (steps % 2 == 0) ? 1.0 : -1.0;
  auto g_red = [&](double s) {
    const double u = s + shift;
    return sign * special::hermite(steps, u) * std::exp(-u * u);
  };
  auto taylor = [&](double s) {
    double acc = 0.0;
    for (int j = m - 2; j >= 0; --j) acc = acc * s + taylor_coeffs[j];
    return acc;
  };
  auto pole_im = [&](double s) {
    cplx z = 1.0 / cplx(s, -eta);
    cplx p = 1.0;
    for (int k = 0; k < m; ++k) p *= z;
    return p.imag();
  };

  const double w = 1.0;
  quad::QuadratureSpec near_spec =
      spec.with_tol(std::max(spec.abs_tol, 1e-15 * std::pow(eta, 1.0 - m)),
                    spec.rel_tol);
  double near = quad::integrate_segments(
      [&](double s) { return (g_red(s) - taylor(s)) * pole_im(s); }, {-w, 0.0, w},
      near_spec);
  for (int j = 0; j <= m - 2; ++j)
    near += taylor_coeffs[j] * detail::pole_window_moment(j, m, eta, w).imag();

  const double far_radius = std::abs(shift) + std::sqrt(2.0 * order) + 9.0;
  const double far =
      quad::integrate_segments([&](double s) { return g_red(s) * pole_im(s); },
                               {-far_radius, -w}, spec) +
      quad::integrate_segments([&](double s) { return g_red(s) * pole_im(s); },
                               {w, far_radius}, spec);
  return amp * (near + far);
}

/// Finite-eta ladder extrapolated to eta = 0; the independent oracle for the
/// delta-derivative rule.
namespace detail {

inline void check_ladder(const std::vector<double>& ladder) {
  if (ladder.size() < 3)
    throw std::invalid_argument("eta ladder needs at least three rungs");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (!(ladder[i] > 0.0) || (i > 0 && !(ladder[i] < ladder[i - 1])))
      throw std::invalid_argument("eta ladder must be positive and strictly decreasing");
  }
}

}  // namespace detail

inline double gaussian_pole_extrapolated(int order, double shift,
                                         const quad::QuadratureSpec& spec) {
  detail::check_ladder(spec.eta_ladder);
  std::vector<double> vals;
  vals.reserve(spec.eta_ladder.size());
  for (double eta : spec.eta_ladder)
    vals.push_back(gaussian_pole_finite_eta(order, shift, eta, spec));
  return quad::neville_zero(spec.eta_ladder, vals).first;
}

// --- GUE double integral ----------------------------------------------------

/// L_N^{(2)}(x_p, x_q): the pole in s_1 collapses through the jet rule, the
/// remaining smooth s_2 integral is done adaptively. The (i s_2)^N factor is
/// folded into the pole series so the s_2 -> 0 cancellation is explicit.
inline double l2_superint(int n_levels, double x_p, double x_q,
                          const quad::QuadratureSpec& spec) {
  if (n_levels < 1) throw std::invalid_argument("l2_superint: N >= 1");
  const std::size_t n = static_cast<std::size_t>(n_levels);
  const Jet gauss = jet::gaussian_shift(x_p, n);
  const double r = (std::sqrt(2.0 * n_levels) + 9.0) / std::sqrt(2.0);

  auto integrand = [&](double s2) {
    const cplx tau(0.0, s2);
    const Jet pole = jet::pole_cancel_series(n_levels, tau, n);
    const cplx functional = pole_functional(n_levels, gauss * pole);
    const cplx is2 = cplx(0.0, s2);
    const cplx expo = std::exp((is2 + x_q) * (is2 + x_q));
    return expo * functional;
  };
  const cplx total = quad::integrate(integrand, -r, r, spec);
  return -total.real() / (special::pi * special::pi);
}

// --- GOE decomposition -------------------------------------------------------

/// psi_N^{(1)}(x_q) = sqrt(pi) (-1)^{N-1} H_{N-1}(x_q) / 2^{N-1}.
inline double psi_goe(int n_levels, double x_q) {
  if (n_levels < 1) throw std::invalid_argument("psi_goe: N >= 1");
  const double sign = (n_levels % 2 == 1) ? 1.0 : -1.0;
  return std::sqrt(special::pi) * sign * special::hermite(n_levels - 1, x_q) /
         std::pow(2.0, n_levels - 1);
}

/// Defining oscillatory integral int ds e^{(is + x_q)^2} (is)^{N-1}, real by
/// conjugate symmetry. Cross-checks the closed form.
inline double psi_goe_quad(int n_levels, double x_q, const quad::QuadratureSpec& spec) {
  const double r = (std::sqrt(2.0 * n_levels) + 9.0) / std::sqrt(2.0);
  const cplx total = quad::integrate(
      [&](double s) {
        const cplx is(0.0, s);
        cplx p = 1.0;
        for (int k = 0; k < n_levels - 1; ++k) p *= is;
        return std::exp((is + x_q) * (is + x_q)) * p;
      },
      -r, r, spec);
  return total.real();
}

/// Integration constant c_N^{(1)}: 0 for even N, -4 pi 2^{N/2} / N!! for odd.
inline double goe_constant(int n_levels) {
  if (n_levels < 0) throw std::invalid_argument("goe_constant: N >= 0");
  if (n_levels % 2 == 0) return 0.0;
  double dfact = 1.0;
  for (int k = 1; k <= n_levels; k += 2) dfact *= k;
  return -4.0 * special::pi * std::pow(2.0, 0.5 * n_levels) / dfact;
}

/// omega_N^{(1)}(x_p) with the eps integral in closed form through the
/// wave-function convolutions.
inline double omega_goe(int n_levels, double x_p) {
  if (n_levels < 0) throw std::invalid_argument("omega_goe: N >= 0");
  const double sign = (n_levels % 2 == 0) ? 1.0 : -1.0;
  // (4 pi (-1)^N / N!) * sqrt(2^N N! sqrt(pi)) = 4 pi (-1)^N sqrt(2^N sqrt(pi)/N!)
  const double amp =
      4.0 * special::pi * sign *
      std::exp(0.5 * (n_levels * std::log(2.0) + 0.5 * std::log(special::pi) -
                      std::lgamma(n_levels + 1.0)));
  const double conv = special::eps_convolution(n_levels, x_p);
  return -std::exp(-0.5 * x_p * x_p) * (amp * conv + goe_constant(n_levels));
}

/// M_N^{(1)} = (N / 8 pi^2) omega_N^{(1)}(x_p) psi_N^{(1)}(x_q); equals
/// e^{(x_q^2-x_p^2)/2} (K^{(1)}(x_q,x_p) - K^{(2)}(x_q,x_p)).
inline double m_goe(int n_levels, double x_p, double x_q) {
  return n_levels / (8.0 * special::pi * special::pi) * omega_goe(n_levels, x_p) *
         psi_goe(n_levels, x_q);
}

inline double l1_superint(int n_levels, double x_p, double x_q,
                          const quad::QuadratureSpec& spec) {
  return l2_superint(n_levels, x_p, x_q, spec) + m_goe(n_levels, x_p, x_q);
}

// --- GSE decomposition -------------------------------------------------------

/// psi_N^{(4)}(x_q) = (pi / (2N)!) e^{-2 x_q^2} H_{2N}(sqrt(2) x_q).
inline double psi_gse(int n_doublets, double x_q) {
  if (n_doublets < 1) throw std::invalid_argument("psi_gse: N >= 1");
  return special::pi * std::exp(-2.0 * x_q * x_q) *
         special::hermite(2 * n_doublets, std::sqrt(2.0) * x_q) /
         std::tgamma(2.0 * n_doublets + 1.0);
}

/// Defining-integral route: pole of order 2N+1 against the shifted Gaussian,
/// evaluated by the delta-derivative rule.
inline double psi_gse_pole_route(int n_doublets, double x_q) {
  const int order = 2 * n_doublets + 1;
  const Jet g = jet::gaussian_shift(std::sqrt(2.0) * x_q, order);
  return im_pole_functional(order, g);
}

/// omega_N^{(4)}(x_p) in closed form through the convolutions.
inline double omega_gse(int n_doublets, double x_p) {
  if (n_doublets < 1) throw std::invalid_argument("omega_gse: N >= 1");
  const int m = 2 * n_doublets - 1;
  const double amp =
      std::sqrt(special::pi) * std::pow(2.0, 3.0 - 2.0 * n_doublets) *
      std::exp(0.5 * (m * std::log(2.0) + 0.5 * std::log(special::pi) +
                      std::lgamma(m + 1.0)));
  return -amp * std::exp(x_p * x_p) *
         special::eps_convolution(m, std::sqrt(2.0) * x_p);
}

/// Direct 2D quadrature of the defining double integral of omega_N^{(4)}
/// (nonsingular, oscillatory-Gaussian; the |s1 - s2| kink is handled by the
/// u, v rotation with a split at v = 0). Validation route.
inline double omega_gse_quad2d(int n_doublets, double x_p,
                               const quad::QuadratureSpec& spec) {
  const double y = std::sqrt(2.0) * x_p;
  const int deg = 2 * (n_doublets - 1) + 2;
  const double r = std::sqrt(2.0 * deg) / std::sqrt(2.0) + 8.0;
  quad::QuadratureSpec inner = spec.with_tol(spec.abs_tol * 0.05, spec.rel_tol * 0.05);

  auto f = [&](double u) {
    return quad::integrate(
        [&](double v) {
          const double s1 = u + v, s2 = u - v;
          const cplx e1 = cplx(0.0, s1) + y;
          const cplx e2 = cplx(0.0, s2) + y;
          const cplx expo = std::exp(0.5 * e1 * e1 + 0.5 * e2 * e2);
          // (i s1 i s2)^{N-1} is real: (-s1 s2)^{N-1}; the factor 8
          // folds the v < 0 half plane onto v > 0.
          const double pw = std::pow(-s1 * s2, n_doublets - 1);
          return (8.0 * v * expo * pw).real();
        },
        0.0, r, inner);
  };
  return quad::integrate(f, -r, r, spec);
}

/// M_N^{(4)}. The product normalization carries the opposite sign to the
/// paper's display; the sign here is the one that closes the decomposition
/// against the stepped sum forms below (regression-tested).
inline double m_gse(int n_doublets, double x_p, double x_q) {
  return -(2.0 * n_doublets) / (8.0 * special::pi * special::pi) *
         omega_gse(n_doublets, x_p) * psi_gse(n_doublets, x_q);
}

inline double l4_superint(int n_doublets, double x_p, double x_q,
                          const quad::QuadratureSpec& spec) {
  const double s = std::sqrt(2.0);
  return l2_superint(2 * n_doublets, s * x_q, s * x_p, spec) +
         m_gse(n_doublets, x_p, x_q);
}

/// L^{(4)} as the 2N-term sum with the order-(2N-1) convolution.
inline double l4_sum_form(int n_doublets, double x_p, double x_q) {
  const double s = std::sqrt(2.0);
  const int m = 2 * n_doublets;
  return std::exp(x_p * x_p - x_q * x_q) *
         (kernels::kernel_gue(m, s * x_p, s * x_q) +
          std::sqrt(0.5 * m) * special::osc_wavefunction(m, s * x_q) *
              special::eps_convolution(m - 1, s * x_p));
}

/// L^{(4)} after the stepping identity: the (2N+1)-term sum matching the
/// GSE kernel directly.
inline double l4_stepped_form(int n_doublets, double x_p, double x_q) {
  const double s = std::sqrt(2.0);
  const int m = 2 * n_doublets;
  return std::exp(x_p * x_p - x_q * x_q) *
         (kernels::kernel_gue(m + 1, s * x_p, s * x_q) +
          std::sqrt(0.5 * (m + 1)) * special::osc_wavefunction(m, s * x_q) *
              special::eps_convolution(m + 1, s * x_p));
}

// --- closure to the kernels ---------------------------------------------

/// One place for the normalization bookkeeping between the eigenvalue
/// integrals and the kernels:
///   K_N^{(beta)}(x_q, x_p) = e^{gamma (x_p^2 - x_q^2)/2} L_N^{(beta)}(x_p, x_q)
///                            / sqrt(|gamma|).
inline double kernel_from_superint(int beta, int n_levels, double x_p, double x_q,
                                   const quad::QuadratureSpec& spec) {
  kernels::EnsembleSpec es(beta, n_levels);
  double l = 0.0;
  switch (beta) {
    case 2:
      l = l2_superint(n_levels, x_p, x_q, spec);
      break;
    case 1:
      l = l1_superint(n_levels, x_p, x_q, spec);
      break;
    case 4:
      l = l4_superint(n_levels, x_p, x_q, spec);
      break;
    default:
      throw std::invalid_argument("kernel_from_superint: beta must be 1, 2 or 4");
  }
  return std::exp(0.5 * es.gamma * (x_p * x_p - x_q * x_q)) * l /
         std::sqrt(static_cast<double>(es.gamma_abs()));
}

// --- integration constants (golden values) ---------------------------------

/// b_N = int eps(t) e^{-t^2/2} H_N(t) dt by quadrature (0 for even N).
inline double b_coefficient(int n, const quad::QuadratureSpec& spec) {
  if (n % 2 == 0) return 0.0;
  const double r = std::sqrt(2.0 * n) + 9.0;
  return quad::integrate(
      [&](double t) { return std::exp(-0.5 * t * t) * special::hermite(n, t); }, 0.0, r,
      spec);
}

/// omega_1^{(1)}(0) through the angular-integral representation, reduced in
/// closed form to a single T integral: -8 sqrt(pi) int_0^inf (e^{-T^2/4} -
/// e^{-T^2/2}) dT. Independent of the eps-convolution machinery.
inline double omega1_origin_t_integral(const quad::QuadratureSpec& spec) {
  return -8.0 * std::sqrt(special::pi) *
         quad::integrate(
             [](double t) { return std::exp(-0.25 * t * t) - std::exp(-0.5 * t * t); },
             0.0, 30.0, spec);
}

/// omega_1^{(1)}(0) by finite-eta 2D quadrature of the half-integer-pole
/// double integral, extrapolated over the eta ladder. Fractional powers use
/// the principal branch per factor, which keeps the integrand single-valued.
inline double omega1_origin_finite_eta(const quad::QuadratureSpec& spec) {
  detail::check_ladder(spec.eta_ladder);
  const double r = 8.5;
  std::vector<double> vals;
  quad::QuadratureSpec inner = spec.with_tol(1e-10, 1e-10);
  quad::QuadratureSpec outer = spec.with_tol(1e-9, 1e-9);
  for (double eta : spec.eta_ladder) {
    auto f = [&](double u) {
      return quad::integrate(
          [&](double v) {
            const double s1 = u + v, s2 = u - v;
            const cplx p1 = std::pow(cplx(s1, -eta), -1.5);
            const cplx p2 = std::pow(cplx(s2, -eta), -1.5);
            // 2|v| kernel, Jacobian 2, and the v < 0 half plane folded in.
            return 8.0 * v * std::exp(-u * u - v * v) * (p1 * p2).imag();
          },
          0.0, r, inner);
    };
    vals.push_back(quad::integrate(f, -r, r, outer));
  }
  return quad::neville_zero(spec.eta_ladder, vals).first;
}

/// c_1^{(1)} anchored by the independent evaluation of omega_1^{(1)}(0).
inline double goe_constant_1_from_integral(const quad::QuadratureSpec& spec) {
  return -8.0 * special::pi - omega1_origin_t_integral(spec);
}

/// The right-hand side of the constant recursion, derived by evaluating the
/// omega pair relation at the origin:
///   c_N - (N/2+1) c_{N+2} = -f [H_{N+1}(0) + (N+1) b_N - b_{N+2}/2],
/// f = 4 pi (-1)^{N+1}/(N+1)!. The bracket vanishes for every N.
inline double constant_recursion_rhs(int n, const quad::QuadratureSpec& spec) {
  const double sign = (n % 2 == 0) ? -1.0 : 1.0;  // (-1)^{N+1}
  const double f = 4.0 * special::pi * sign / std::tgamma(n + 2.0);
  return -f * (special::hermite(n + 1, 0.0) + (n + 1.0) * b_coefficient(n, spec) -
               0.5 * b_coefficient(n + 2, spec));
}

/// Climb the two-step recursion from (c_0, c_1) with the right-hand side
/// assembled from quadrature values of b_N.
inline std::vector<double> goe_constants_by_recursion(int n_max, double c0, double c1,
                                                      const quad::QuadratureSpec& spec) {
  std::vector<double> c(n_max + 1, 0.0);
  if (n_max >= 0) c[0] = c0;
  if (n_max >= 1) c[1] = c1;
  for (int n = 0; n + 2 <= n_max; ++n)
    c[n + 2] = (c[n] - constant_recursion_rhs(n, spec)) / (0.5 * n + 1.0);
  return c;
}

// --- recursion report --------------------------------------------------------

struct RecursionReport {
  struct Item {
    std::string name;
    double residual;
    double tol;
    bool pass;
  };
  std::vector<Item> items;
  bool all_pass = true;

  void add(std::string name, double residual, double tol) {
    const bool ok = std::abs(residual) <= tol;
    items.push_back({std::move(name), residual, tol, ok});
    all_pass = all_pass && ok;
  }
};

/// Verifies the omega ladder relations, the vanishing right-hand side of the
/// constant recursion, and the closure of the c sequence on its closed form.
inline RecursionReport recursion_suite(int n_max, const quad::QuadratureSpec& spec) {
  if (n_max < 2) throw std::invalid_argument("recursion_suite: N_max >= 2");
  RecursionReport rep;
  const double grid[4] = {-1.5, -0.5, 0.5, 1.5};

  for (int n = 0; n + 2 <= n_max; ++n) {
    double worst_alg = 0.0, worst_der = 0.0;
    for (double x : grid) {
      const double sign = (n % 2 == 0) ? -1.0 : 1.0;  // (-1)^{N+1}
      const double rhs = 4.0 * special::pi * sign / std::tgamma(n + 2.0) *
                         special::hermite(n + 1, x) * std::exp(-x * x);
      const double alg =
          omega_goe(n, x) - (0.5 * n + 1.0) * omega_goe(n + 2, x) - rhs;
      worst_alg = std::max(worst_alg, std::abs(alg));

      const double h = 1e-4;
      auto dw = [&](int m) {
        return (omega_goe(m, x + h) - omega_goe(m, x - h)) / (2.0 * h);
      };
      const double der =
          -(0.5 * n + 1.0) * (dw(n + 2) + 2.0 * x * omega_goe(n + 2, x)) - dw(n);
      worst_der = std::max(worst_der, std::abs(der));
    }
    rep.add("omega_pair_N=" + std::to_string(n), worst_alg, 1e-8);
    rep.add("omega_derivative_N=" + std::to_string(n), worst_der, 1e-5);
  }

  for (int n = 0; n <= n_max; ++n)
    rep.add("constant_rhs_N=" + std::to_string(n), constant_recursion_rhs(n, spec), 1e-8);

  const auto c = goe_constants_by_recursion(n_max, goe_constant(0), goe_constant(1), spec);
  for (int n = 0; n <= n_max; ++n)
    rep.add("constant_closure_N=" + std::to_string(n), c[n] - goe_constant(n), 1e-8);

  return rep;
}

}  // namespace rmtk::superint
