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

#include "rmtk/kernels.hpp"
#include "rmtk/linalg.hpp"

namespace rmtk::correlations {

class NotAntisymmetric : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class OddDimension : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SelfDualityViolated : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DegeneratePoints : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using cplx = std::complex<double>;

/// Ordered list of k pairwise-distinct energies. Contact terms are out of
/// scope, hence the hard distinctness floor.
struct EnergyTuple {
  std::vector<double> xs;

  explicit EnergyTuple(std::vector<double> points, double floor = 1e-8)
      : xs(std::move(points)) {
    if (xs.empty()) throw std::invalid_argument("EnergyTuple: need at least one point");
    for (double x : xs)
      if (!std::isfinite(x)) throw std::invalid_argument("EnergyTuple: non-finite point");
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t j = i + 1; j < xs.size(); ++j)
        if (std::abs(xs[i] - xs[j]) < floor)
          throw DegeneratePoints("EnergyTuple: points closer than the distinctness floor");
  }

  int k() const { return static_cast<int>(xs.size()); }
};

/// Pfaffian of an antisymmetric matrix of even dimension by skew-symmetric
/// Gaussian elimination (Parlett-Reid) with partial pivoting.
inline cplx pfaffian(std::vector<cplx> m, int n) {
  if (n < 0 || static_cast<int>(m.size()) != n * n)
    throw std::invalid_argument("pfaffian: size mismatch");
  if (n % 2 == 1) throw OddDimension("pfaffian: odd dimension");
  if (n == 0) return 1.0;

  double norm = 0.0, defect = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      norm += std::norm(m[i * n + j]);
      defect += std::norm(m[i * n + j] + m[j * n + i]);
    }
  if (std::sqrt(defect) > 1e-10 * std::max(std::sqrt(norm), 1e-30))
    throw NotAntisymmetric("pfaffian: matrix is not antisymmetric");

  cplx result = 1.0;
  for (int k = 0; k + 1 < n; k += 2) {
    int kp = k + 1;
    for (int i = k + 2; i < n; ++i)
      if (std::abs(m[i * n + k]) > std::abs(m[kp * n + k])) kp = i;
    if (kp != k + 1) {
      for (int i = 0; i < n; ++i) std::swap(m[(k + 1) * n + i], m[kp * n + i]);
      for (int i = 0; i < n; ++i) std::swap(m[i * n + (k + 1)], m[i * n + kp]);
      result = -result;
    }
    const cplx pivot = m[k * n + (k + 1)];
    if (std::abs(pivot) == 0.0) return 0.0;
    result *= pivot;
    if (k + 2 < n) {
      std::vector<cplx> tau(n - (k + 2));
      for (int i = k + 2; i < n; ++i) tau[i - (k + 2)] = m[k * n + i] / pivot;
      for (int i = k + 2; i < n; ++i)
        for (int j = k + 2; j < n; ++j)
          m[i * n + j] +=
              tau[i - (k + 2)] * m[j * n + (k + 1)] - tau[j - (k + 2)] * m[i * n + (k + 1)];
    }
  }
  return result;
}

/// A k x k quaternion matrix in the 2x2 complex block embedding, self-dual:
/// Z M^T Z^{-1} = M with Z the standard symplectic unit.
struct SelfDualQuaternionMatrix {
  int k;
  std::vector<cplx> m;  // 2k x 2k row-major

  explicit SelfDualQuaternionMatrix(int k_) : k(k_), m(4 * k_ * k_, cplx{}) {
    if (k_ < 1) throw std::invalid_argument("SelfDualQuaternionMatrix: k >= 1");
  }

  cplx& at(int i, int j) { return m[i * 2 * k + j]; }
  const cplx& at(int i, int j) const { return m[i * 2 * k + j]; }

  static SelfDualQuaternionMatrix identity(int k_) {
    SelfDualQuaternionMatrix q(k_);
    for (int i = 0; i < 2 * k_; ++i) q.at(i, i) = 1.0;
    return q;
  }

  /// Frobenius norm of Z M^T Z^{-1} - M relative to ||M||.
  double self_duality_defect() const {
    const int n = 2 * k;
    double norm = 0.0, defect = 0.0;
    auto sgn = [](int i) { return (i % 2 == 0) ? 1.0 : -1.0; };
    auto pair = [](int i) { return (i % 2 == 0) ? i + 1 : i - 1; };
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        // (Z M^T Z^{-1})_{ij} = sgn(i) sgn(j) M_{pair(j), pair(i)}
        const cplx dual = sgn(i) * sgn(j) * at(pair(j), pair(i));
        norm += std::norm(at(i, j));
        defect += std::norm(dual - at(i, j));
      }
    return std::sqrt(defect) / std::max(std::sqrt(norm), 1e-30);
  }
};

/// Quaternion determinant of a self-dual matrix, computed as Pf(Z M).
/// The convention is frozen by qdet(I) = 1, multiplicativity on direct sums
/// and the k = 1 GOE density oracle (see tests).
inline double qdet(const SelfDualQuaternionMatrix& q, double dual_tol = 1e-8) {
  if (q.self_duality_defect() > dual_tol)
    throw SelfDualityViolated("qdet: matrix is not self-dual");
  const int n = 2 * q.k;
  std::vector<cplx> zm(n * n);
  for (int p = 0; p < q.k; ++p)
    for (int j = 0; j < n; ++j) {
      zm[(2 * p) * n + j] = q.at(2 * p + 1, j);
      zm[(2 * p + 1) * n + j] = -q.at(2 * p, j);
    }
  const cplx pf = pfaffian(std::move(zm), n);
  if (std::abs(pf.imag()) > 1e-9 * std::max(1.0, std::abs(pf)))
    throw std::runtime_error("qdet: imaginary residue above tolerance");
  return pf.real();
}

namespace detail {

// The lower-left entry of the GOE correlation quaternion. The eps sign and
// the unhalved alpha difference are fixed against exact small-N two- and
// three-point functions computed from the joint eigenvalue density.
inline double goe_j_entry(int n_levels, double x_p, double x_q) {
  return kernels::mehta_is(n_levels, x_p, x_q) +
         special::alpha_antiderivative(n_levels, x_p) -
         special::alpha_antiderivative(n_levels, x_q) - special::eps(x_p - x_q);
}

// Same value routed through the antisymmetrized kernel operators; equality
// with goe_j_entry is the DS/IS antisymmetry theorem exercised by the dual
// assembly tests.
inline double goe_j_entry_ops(int n_levels, double x_p, double x_q) {
  return kernels::op_i(1, n_levels, x_p, x_q) +
         0.5 * (special::alpha_antiderivative(n_levels, x_p) -
                special::alpha_antiderivative(n_levels, x_q)) -
         special::eps(x_p - x_q);
}

}  // namespace detail

/// GOE correlation matrix with kernel-operator entries.
inline SelfDualQuaternionMatrix goe_matrix(int n_levels, const EnergyTuple& xs) {
  SelfDualQuaternionMatrix q(xs.k());
  for (int p = 0; p < xs.k(); ++p)
    for (int c = 0; c < xs.k(); ++c) {
      const double xp = xs.xs[p], xq = xs.xs[c];
      q.at(2 * p, 2 * c) = kernels::kernel_goe(n_levels, xp, xq);
      q.at(2 * p, 2 * c + 1) = kernels::op_d(1, n_levels, xp, xq);
      q.at(2 * p + 1, 2 * c) = detail::goe_j_entry_ops(n_levels, xp, xq);
      q.at(2 * p + 1, 2 * c + 1) = kernels::kernel_goe(n_levels, xq, xp);
    }
  return q;
}

/// GOE correlation matrix with Mehta's one-sided S-operator entries.
inline SelfDualQuaternionMatrix goe_matrix_mehta(int n_levels, const EnergyTuple& xs) {
  SelfDualQuaternionMatrix q(xs.k());
  for (int p = 0; p < xs.k(); ++p)
    for (int c = 0; c < xs.k(); ++c) {
      const double xp = xs.xs[p], xq = xs.xs[c];
      q.at(2 * p, 2 * c) =
          kernels::s_mehta(n_levels, xp, xq) + special::alpha(n_levels, xp);
      q.at(2 * p, 2 * c + 1) = kernels::mehta_ds(n_levels, xp, xq);
      q.at(2 * p + 1, 2 * c) = detail::goe_j_entry(n_levels, xp, xq);
      q.at(2 * p + 1, 2 * c + 1) =
          kernels::s_mehta(n_levels, xq, xp) + special::alpha(n_levels, xq);
    }
  return q;
}

/// GSE correlation matrix with kernel-operator entries.
inline SelfDualQuaternionMatrix gse_matrix(int n_doublets, const EnergyTuple& xs) {
  SelfDualQuaternionMatrix q(xs.k());
  for (int p = 0; p < xs.k(); ++p)
    for (int c = 0; c < xs.k(); ++c) {
      const double xp = xs.xs[p], xq = xs.xs[c];
      q.at(2 * p, 2 * c) = kernels::kernel_gse(n_doublets, xp, xq);
      q.at(2 * p, 2 * c + 1) = kernels::op_d(4, n_doublets, xp, xq);
      q.at(2 * p + 1, 2 * c) = kernels::op_i(4, n_doublets, xp, xq);
      q.at(2 * p + 1, 2 * c + 1) = kernels::kernel_gse(n_doublets, xq, xp);
    }
  return q;
}

/// GSE correlation matrix in Mehta's sqrt(2)-scaled S form.
inline SelfDualQuaternionMatrix gse_matrix_mehta(int n_doublets, const EnergyTuple& xs) {
  SelfDualQuaternionMatrix q(xs.k());
  const int m = 2 * n_doublets + 1;
  const double s = std::sqrt(2.0);
  const double inv = 1.0 / s;
  for (int p = 0; p < xs.k(); ++p)
    for (int c = 0; c < xs.k(); ++c) {
      const double a = s * xs.xs[p], b = s * xs.xs[c];
      q.at(2 * p, 2 * c) = inv * kernels::s_mehta(m, a, b);
      q.at(2 * p, 2 * c + 1) = inv * kernels::mehta_ds(m, a, b);
      q.at(2 * p + 1, 2 * c) = inv * kernels::mehta_is(m, a, b);
      q.at(2 * p + 1, 2 * c + 1) = inv * kernels::s_mehta(m, b, a);
    }
  return q;
}

/// GUE k-point function: ordinary determinant of the kernel matrix.
inline double r_k_gue(int n_levels, const EnergyTuple& xs) {
  const int k = xs.k();
  std::vector<double> m(k * k);
  for (int p = 0; p < k; ++p)
    for (int c = 0; c < k; ++c)
      m[p * k + c] = kernels::kernel_gue(n_levels, xs.xs[p], xs.xs[c]);
  return linalg::lu_determinant(std::move(m), k);
}

inline double r_k_goe(int n_levels, const EnergyTuple& xs) {
  return qdet(goe_matrix(n_levels, xs));
}

inline double r_k_gse(int n_doublets, const EnergyTuple& xs) {
  return qdet(gse_matrix(n_doublets, xs));
}

inline double r_k(int beta, int n_levels, const EnergyTuple& xs) {
  switch (beta) {
    case 1:
      return r_k_goe(n_levels, xs);
    case 2:
      return r_k_gue(n_levels, xs);
    case 4:
      return r_k_gse(n_levels, xs);
    default:
      throw std::invalid_argument("r_k: beta must be 1, 2 or 4");
  }
}

}  // namespace rmtk::correlations
