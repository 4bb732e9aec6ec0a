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
#include <stdexcept>
#include <vector>

namespace rmtk::linalg {

class EigenFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// Householder reduction of a symmetric matrix to tridiagonal form,
// eigenvalues only. a is row-major n x n and is destroyed.
inline void tridiagonalize(std::vector<double>& a, int n, std::vector<double>& d,
                           std::vector<double>& e) {
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  for (int i = n - 1; i >= 1; --i) {
    const int l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (int k = 0; k <= l; ++k) scale += std::abs(a[i * n + k]);
      if (scale == 0.0) {
        e[i] = a[i * n + l];
      } else {
        for (int k = 0; k <= l; ++k) {
          a[i * n + k] /= scale;
          h += a[i * n + k] * a[i * n + k];
        }
        double f = a[i * n + l];
        double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        a[i * n + l] = f - g;
        f = 0.0;
        for (int j = 0; j <= l; ++j) {
          double gj = 0.0;
          for (int k = 0; k <= j; ++k) gj += a[j * n + k] * a[i * n + k];
          for (int k = j + 1; k <= l; ++k) gj += a[k * n + j] * a[i * n + k];
          e[j] = gj / h;
          f += e[j] * a[i * n + j];
        }
        const double hh = f / (h + h);
        for (int j = 0; j <= l; ++j) {
          const double fj = a[i * n + j];
          const double gj = e[j] - hh * fj;
          e[j] = gj;
          for (int k = 0; k <= j; ++k)
            a[j * n + k] -= fj * e[k] + gj * a[i * n + k];
        }
      }
    } else {
      e[i] = a[i * n + l];
    }
  }
  e[0] = 0.0;
  for (int i = 0; i < n; ++i) d[i] = a[i * n + i];
}

// Implicit-shift QL iteration on a tridiagonal matrix, eigenvalues only.
inline void ql_eigenvalues(std::vector<double>& d, std::vector<double>& e, int n) {
  const double eps = 2.220446049250313e-16;
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == 60)
          throw EigenFailure("ql_eigenvalues: too many iterations");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? r : -r));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace detail

/// Eigenvalues of a real symmetric matrix (row-major, size n x n), sorted
/// ascending. The input copy is consumed.
inline std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n) {
  if (static_cast<int>(a.size()) != n * n)
    throw std::invalid_argument("symmetric_eigenvalues: size mismatch");
  std::vector<double> d, e;
  if (n == 1) return {a[0]};
  detail::tridiagonalize(a, n, d, e);
  detail::ql_eigenvalues(d, e, n);
  std::sort(d.begin(), d.end());
  return d;
}

/// Eigenvalues of a complex Hermitian matrix via the real symmetric
/// embedding [[A, -B], [B, A]] of H = A + iB. The doubled spectrum is
/// collapsed by pairing adjacent values after sorting.
inline std::vector<double> hermitian_eigenvalues(
    const std::vector<std::complex<double>>& h, int n) {
  if (static_cast<int>(h.size()) != n * n)
    throw std::invalid_argument("hermitian_eigenvalues: size mismatch");
  const int m = 2 * n;
  std::vector<double> a(m * m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double re = h[i * n + j].real();
      const double im = h[i * n + j].imag();
      a[i * m + j] = re;
      a[(i + n) * m + (j + n)] = re;
      a[i * m + (j + n)] = -im;
      a[(i + n) * m + j] = im;
    }
  }
  std::vector<double> all = symmetric_eigenvalues(std::move(a), m);
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = 0.5 * (all[2 * k] + all[2 * k + 1]);
  return out;
}

/// Determinant by LU with partial pivoting.
template <class T>
T lu_determinant(std::vector<T> a, int n) {
  if (static_cast<int>(a.size()) != n * n)
    throw std::invalid_argument("lu_determinant: size mismatch");
  T det = T(1);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(a[col * n + col]);
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(a[r * n + col]) > best) {
        best = std::abs(a[r * n + col]);
        piv = r;
      }
    }
    if (best == 0.0) return T(0);
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
      det = -det;
    }
    det *= a[col * n + col];
    for (int r = col + 1; r < n; ++r) {
      const T factor = a[r * n + col] / a[col * n + col];
      for (int c = col; c < n; ++c) a[r * n + c] -= factor * a[col * n + c];
    }
  }
  return det;
}

}  // namespace rmtk::linalg
