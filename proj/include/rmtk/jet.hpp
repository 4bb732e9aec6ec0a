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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace rmtk::jet {

class InsufficientJetOrder : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Truncated Taylor series around s = 0 with complex coefficients.
/// Arithmetic is exact truncated-polynomial algebra; binary operations
/// require operands of equal length.
class Jet {
 public:
  using value_type = std::complex<double>;

  explicit Jet(std::size_t n_coeffs) : c_(n_coeffs, value_type{}) {
    if (n_coeffs == 0) throw InsufficientJetOrder("Jet needs at least one coefficient");
  }

  static Jet constant(value_type v, std::size_t n) {
    Jet j(n);
    j.c_[0] = v;
    return j;
  }

  /// v + s truncated at n coefficients.
  static Jet variable(value_type v, std::size_t n) {
    Jet j(n);
    j.c_[0] = v;
    if (n > 1) j.c_[1] = 1.0;
    return j;
  }

  std::size_t size() const { return c_.size(); }
  value_type& operator[](std::size_t i) { return c_[i]; }
  const value_type& operator[](std::size_t i) const { return c_[i]; }

  Jet operator+(const Jet& b) const {
    check_size(b);
    Jet r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += b.c_[i];
    return r;
  }

  Jet operator-(const Jet& b) const {
    check_size(b);
    Jet r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= b.c_[i];
    return r;
  }

  Jet operator*(const Jet& b) const {
    check_size(b);
    Jet r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      value_type acc{};
      for (std::size_t j = 0; j <= i; ++j) acc += c_[j] * b.c_[i - j];
      r.c_[i] = acc;
    }
    return r;
  }

  /// Division by a series with nonzero constant term.
  Jet operator/(const Jet& b) const {
    check_size(b);
    if (b.c_[0] == value_type{})
      throw InsufficientJetOrder("Jet division by series with zero constant term");
    Jet r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      value_type acc = c_[i];
      for (std::size_t j = 0; j < i; ++j) acc -= r.c_[j] * b.c_[i - j];
      r.c_[i] = acc / b.c_[0];
    }
    return r;
  }

  Jet operator*(value_type s) const {
    Jet r = *this;
    for (auto& c : r.c_) c *= s;
    return r;
  }

  /// Exponential composition exp(a(s)) by the standard convolution recurrence.
  Jet exp() const {
    Jet r(c_.size());
    r.c_[0] = std::exp(c_[0]);
    for (std::size_t k = 1; k < c_.size(); ++k) {
      value_type acc{};
      for (std::size_t j = 1; j <= k; ++j)
        acc += static_cast<double>(j) * c_[j] * r.c_[k - j];
      r.c_[k] = acc / static_cast<double>(k);
    }
    return r;
  }

 private:
  void check_size(const Jet& b) const {
    if (b.c_.size() != c_.size())
      throw InsufficientJetOrder("Jet size mismatch");
  }

  std::vector<value_type> c_;
};

inline Jet operator*(Jet::value_type s, const Jet& j) { return j * s; }

/// Taylor coefficients of exp(-(s + shift)^2) around s = 0.
inline Jet gaussian_shift(double shift, std::size_t n_coeffs) {
  Jet q(n_coeffs);
  q[0] = -shift * shift;
  if (n_coeffs > 1) q[1] = -2.0 * shift;
  if (n_coeffs > 2) q[2] = -1.0;
  return q.exp();
}

/// Taylor coefficients of tau^N / (s - tau) around s = 0, truncated at
/// n_coeffs <= N terms. All retained coefficients are the polynomial part
/// -tau^{N-1-m}, so the result stays finite as tau -> 0.
inline Jet pole_cancel_series(int pole_order, std::complex<double> tau,
                              std::size_t n_coeffs) {
  if (pole_order < 1 || n_coeffs > static_cast<std::size_t>(pole_order))
    throw InsufficientJetOrder("pole_cancel_series: need n_coeffs <= pole_order");
  Jet p(n_coeffs);
  std::complex<double> power = 1.0;  // tau^{N-1-m} built from m = n-1 downward
  for (int e = 0; e < pole_order - static_cast<int>(n_coeffs); ++e) power *= tau;
  for (std::size_t m = n_coeffs; m-- > 0;) {
    p[m] = -power;
    power *= tau;
  }
  return p;
}

}  // namespace rmtk::jet
