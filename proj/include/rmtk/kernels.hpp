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

#include "rmtk/special.hpp"

namespace rmtk::kernels {

class DegenerateArguments : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dyson index beta with the derived gamma and the level number N.
/// For beta = 4, N counts Kramers-degenerate doublets.
struct EnsembleSpec {
  int beta;
  int n_levels;
  int gamma;

  EnsembleSpec(int beta_, int n_levels_) : beta(beta_), n_levels(n_levels_) {
    if (beta != 1 && beta != 2 && beta != 4)
      throw std::invalid_argument("EnsembleSpec: beta must be 1, 2 or 4");
    if (n_levels < 1)
      throw std::invalid_argument("EnsembleSpec: need at least one level");
    gamma = (beta == 4) ? -2 : 1;
  }

  int gamma_abs() const { return gamma < 0 ? -gamma : gamma; }
};

/// Ordered energy pair with the imaginary regularization eta > 0 that
/// realizes x_p^- = x_p - i eta.
struct EnergyArgs {
  double x_p;
  double x_q;
  double eta;

  EnergyArgs(double xp, double xq, double eta_) : x_p(xp), x_q(xq), eta(eta_) {
    if (!std::isfinite(xp) || !std::isfinite(xq))
      throw std::invalid_argument("EnergyArgs: energies must be finite");
    if (!(eta_ > 0.0)) throw std::invalid_argument("EnergyArgs: eta must be > 0");
  }
};

enum class Route { analytic, mc, superint };

struct KernelValue {
  double value;
  Route route;
  double uncertainty;

  KernelValue(double v, Route r, double unc = 0.0)
      : value(v), route(r), uncertainty(unc) {
    if (r != Route::mc && unc != 0.0)
      throw std::invalid_argument("KernelValue: deterministic routes carry no uncertainty");
    if (unc < 0.0) throw std::invalid_argument("KernelValue: negative uncertainty");
  }
};

/// GUE kernel, sum of the first N oscillator wave function products.
inline double kernel_gue(int n_levels, double x_p, double x_q) {
  if (n_levels < 1) throw std::invalid_argument("kernel_gue: N >= 1");
  std::vector<double> a, b;
  special::osc_wavefunction_all(n_levels - 1, x_p, a);
  special::osc_wavefunction_all(n_levels - 1, x_q, b);
  double sum = 0.0;
  for (int n = 0; n < n_levels; ++n) sum += a[n] * b[n];
  return sum;
}

/// The eps-convolution term sqrt(N/2) phi_{N-1}(x_p) int eps(x_q - z) phi_N(z) dz.
inline double goe_eps_term(int n_levels, double x_p, double x_q) {
  return std::sqrt(0.5 * n_levels) * special::osc_wavefunction(n_levels - 1, x_p) *
         special::eps_convolution(n_levels, x_q);
}

/// Mehta's S_N: the GOE kernel without the alpha term.
inline double s_mehta(int n_levels, double x_p, double x_q) {
  return kernel_gue(n_levels, x_p, x_q) + goe_eps_term(n_levels, x_p, x_q);
}

/// GOE kernel. Not symmetric in its arguments; alpha enters on x_p only.
inline double kernel_goe(int n_levels, double x_p, double x_q) {
  return s_mehta(n_levels, x_p, x_q) + special::alpha(n_levels, x_p);
}

/// GSE kernel for N Kramers doublets, internally 2N+1 levels at sqrt(2)-scaled
/// energies. No alpha term for any N.
inline double kernel_gse(int n_doublets, double x_p, double x_q) {
  if (n_doublets < 1) throw std::invalid_argument("kernel_gse: N >= 1");
  const double s = std::sqrt(2.0);
  return s_mehta(2 * n_doublets + 1, s * x_p, s * x_q) / s;
}

inline double kernel(int beta, int n_levels, double x_p, double x_q) {
  switch (beta) {
    case 1:
      return kernel_goe(n_levels, x_p, x_q);
    case 2:
      return kernel_gue(n_levels, x_p, x_q);
    case 4:
      return kernel_gse(n_levels, x_p, x_q);
    default:
      throw std::invalid_argument("kernel: beta must be 1, 2 or 4");
  }
}

inline double level_density(int beta, int n_levels, double x) {
  return kernel(beta, n_levels, x, x);
}

// --- analytic derivatives in the second argument ------------------------

inline double kernel_gue_d2(int n_levels, double a, double b) {
  std::vector<double> pa, pb;
  special::osc_wavefunction_all(n_levels - 1, a, pa);
  special::osc_wavefunction_all(n_levels, b, pb);
  double sum = 0.0;
  for (int n = 0; n < n_levels; ++n) {
    const double lower = (n >= 1) ? std::sqrt(0.5 * n) * pb[n - 1] : 0.0;
    sum += pa[n] * (lower - std::sqrt(0.5 * (n + 1.0)) * pb[n + 1]);
  }
  return sum;
}

inline double s_mehta_d2(int n_levels, double a, double b) {
  return kernel_gue_d2(n_levels, a, b) +
         std::sqrt(0.5 * n_levels) * special::osc_wavefunction(n_levels - 1, a) *
             special::osc_wavefunction(n_levels, b);
}

/// d/db K^{(beta)}(a, b); the alpha term never contributes.
inline double kernel_d2(int beta, int n_levels, double a, double b) {
  switch (beta) {
    case 2:
      return kernel_gue_d2(n_levels, a, b);
    case 1:
      return s_mehta_d2(n_levels, a, b);
    case 4: {
      const double s = std::sqrt(2.0);
      return s_mehta_d2(2 * n_levels + 1, s * a, s * b);
    }
    default:
      throw std::invalid_argument("kernel_d2: beta must be 1, 2 or 4");
  }
}

// --- eps-integrals of the kernels ---------------------------------------

/// int eps(a - t) S_M(t, b) dt in closed form through the convolutions I_n.
inline double s_mehta_eps_integral(int m_levels, double a, double b) {
  std::vector<double> conv, phi;
  special::eps_convolution_all(m_levels, a, conv);
  special::osc_wavefunction_all(m_levels - 1, b, phi);
  double sum = 0.0;
  for (int n = 0; n < m_levels; ++n) sum += conv[n] * phi[n];
  return sum + std::sqrt(0.5 * m_levels) * conv[m_levels - 1] *
                   special::eps_convolution(m_levels, b);
}

/// int eps(a - t) K^{(beta)}(t, b) dt.
inline double kernel_eps_integral(int beta, int n_levels, double a, double b) {
  switch (beta) {
    case 2: {
      std::vector<double> conv, phi;
      special::eps_convolution_all(n_levels - 1, a, conv);
      special::osc_wavefunction_all(n_levels - 1, b, phi);
      double sum = 0.0;
      for (int n = 0; n < n_levels; ++n) sum += conv[n] * phi[n];
      return sum;
    }
    case 1:
      // The alpha part integrates to I_{N-1}(a) / int phi_{N-1}.
      return s_mehta_eps_integral(n_levels, a, b) +
             special::alpha_antiderivative(n_levels, a);
    case 4: {
      const double s = std::sqrt(2.0);
      return 0.5 * s_mehta_eps_integral(2 * n_levels + 1, s * a, s * b);
    }
    default:
      throw std::invalid_argument("kernel_eps_integral: beta must be 1, 2 or 4");
  }
}

// --- the quaternion-determinant operators --------------------------------

/// DK(x_p, x_q) = (1/2)(d/dx_p K(x_q, x_p) - (p <-> q)). Antisymmetric,
/// vanishes on the diagonal.
inline double op_d(int beta, int n_levels, double x_p, double x_q) {
  return 0.5 * (kernel_d2(beta, n_levels, x_q, x_p) -
                kernel_d2(beta, n_levels, x_p, x_q));
}

/// IK(x_p, x_q) = (1/2)(int eps(x_p - t) K(t, x_q) dt - (p <-> q)).
inline double op_i(int beta, int n_levels, double x_p, double x_q) {
  return 0.5 * (kernel_eps_integral(beta, n_levels, x_p, x_q) -
                kernel_eps_integral(beta, n_levels, x_q, x_p));
}

/// JK = IK + eps(x_p - x_q).
inline double op_j(int beta, int n_levels, double x_p, double x_q) {
  return op_i(beta, n_levels, x_p, x_q) + special::eps(x_p - x_q);
}

// Mehta's one-sided operators acting on S (used by the dual assemblies).
inline double mehta_ds(int m_levels, double a, double b) {
  return -s_mehta_d2(m_levels, a, b);
}

inline double mehta_is(int m_levels, double a, double b) {
  return s_mehta_eps_integral(m_levels, a, b);
}

inline double mehta_js(int n_levels, double a, double b) {
  return mehta_is(n_levels, a, b) + special::alpha_antiderivative(n_levels, a) -
         special::alpha_antiderivative(n_levels, b) + special::eps(a - b);
}

// --- generating-function difference quotient ------------------------------

/// Assembles K_N^{(beta)}(x_q, x_p) from a generating-function value
/// Z_1^{(beta)}(x) via the difference quotient
///   K = (1 / (|gamma| pi)) e^{gamma (x_p^2 - x_q^2) / 2} Im (Z - 1)/(x_q - x_p).
/// The |gamma| prefactor (rather than gamma) is fixed by route equivalence
/// with the analytic kernels; see the module tests.
inline double kernel_from_z1(int beta, int n_levels, double x_p, double x_q,
                             std::complex<double> z1, double floor = 1e-8) {
  (void)n_levels;
  EnsembleSpec spec(beta, n_levels);
  if (std::abs(x_p - x_q) < floor)
    throw DegenerateArguments("kernel_from_z1: |x_p - x_q| below floor; use level_density");
  const double pref =
      std::exp(0.5 * spec.gamma * (x_p * x_p - x_q * x_q)) /
      (spec.gamma_abs() * special::pi);
  return pref * (z1 - 1.0).imag() / (x_q - x_p);
}

}  // namespace rmtk::kernels
