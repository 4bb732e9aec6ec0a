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
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "rmtk/kernels.hpp"
#include "rmtk/linalg.hpp"
#include "rmtk/rng.hpp"

namespace rmtk::mc {

class InsufficientSamples : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using cplx = std::complex<double>;

struct MCConfig {
  kernels::EnsembleSpec ensemble;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  double eta = 0.0;  // <= 0 selects the spacing-based default
  int workers = 1;
};

struct MCEstimate {
  cplx mean;
  double std_error;  // delta-method standard error of Im(mean)
  std::uint64_t samples;
  std::uint64_t seed;
};

/// eta default: a small fraction of the local mean level spacing, clamped to
/// [1e-4, 0.1]. The fraction balances the O(eta) smearing bias against the
/// eta^{-1} (beta
/// = 1,2) or eta^{-3} (beta = 4) variance growth; the values keep the bias
/// below half a standard error at 1e5 samples.
inline double default_eta(const kernels::EnsembleSpec& spec, double x) {
  const double rho = std::max(kernels::level_density(spec.beta, spec.n_levels, x), 1e-6);
  const double fraction = (spec.beta == 4) ? 0.025 : 0.0125;
  return std::clamp(fraction / rho, 1e-4, 0.1);
}

// --- matrix sampling -------------------------------------------------------
//
// Weights follow exp(-(beta/2) tr H^2) with Mehta's entry variances:
//   beta=1: diagonal 1, off-diagonal 1/2
//   beta=2: diagonal 1/2, off-diagonal components 1/4
//   beta=4: quaternion diagonal 1/4, off-diagonal components 1/8
// The fill order (row-major upper triangle, diagonal first per row) is part
// of the reproducibility contract.

inline std::vector<double> sample_goe(int n, rng::GaussianStream& g) {
  std::vector<double> h(n * n);
  const double off = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i) {
    h[i * n + i] = g.next();
    for (int j = i + 1; j < n; ++j) {
      const double v = off * g.next();
      h[i * n + j] = v;
      h[j * n + i] = v;
    }
  }
  return h;
}

inline std::vector<cplx> sample_gue(int n, rng::GaussianStream& g) {
  std::vector<cplx> h(n * n);
  const double diag = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i) {
    h[i * n + i] = diag * g.next();
    for (int j = i + 1; j < n; ++j) {
      const cplx v(0.5 * g.next(), 0.5 * g.next());
      h[i * n + j] = v;
      h[j * n + i] = std::conj(v);
    }
  }
  return h;
}

/// Quaternion-real self-dual matrix in the 2n x 2n complex embedding.
inline std::vector<cplx> sample_gse(int n, rng::GaussianStream& g) {
  const int m = 2 * n;
  std::vector<cplx> h(m * m);
  const double off = 1.0 / (2.0 * std::sqrt(2.0));
  for (int i = 0; i < n; ++i) {
    const double d = 0.5 * g.next();
    h[(2 * i) * m + 2 * i] = d;
    h[(2 * i + 1) * m + 2 * i + 1] = d;
    for (int j = i + 1; j < n; ++j) {
      const cplx z(off * g.next(), off * g.next());
      const cplx w(off * g.next(), off * g.next());
      // block(i,j) = [[z, w], [-conj(w), conj(z)]], block(j,i) its adjoint
      h[(2 * i) * m + 2 * j] = z;
      h[(2 * i) * m + 2 * j + 1] = w;
      h[(2 * i + 1) * m + 2 * j] = -std::conj(w);
      h[(2 * i + 1) * m + 2 * j + 1] = std::conj(z);
      h[(2 * j) * m + 2 * i] = std::conj(z);
      h[(2 * j) * m + 2 * i + 1] = -w;
      h[(2 * j + 1) * m + 2 * i] = std::conj(w);
      h[(2 * j + 1) * m + 2 * i + 1] = z;
    }
  }
  return h;
}

/// Sorted eigenvalues of one sampled matrix; GSE Kramers doublets are
/// deduplicated by pairing adjacent values.
inline std::vector<double> sample_eigenvalues(const kernels::EnsembleSpec& spec,
                                              std::uint64_t seed, std::uint64_t index) {
  rng::GaussianStream g(seed, index);
  const int n = spec.n_levels;
  switch (spec.beta) {
    case 1:
      return linalg::symmetric_eigenvalues(sample_goe(n, g), n);
    case 2:
      return linalg::hermitian_eigenvalues(sample_gue(n, g), n);
    case 4: {
      std::vector<double> pairs = linalg::hermitian_eigenvalues(sample_gse(n, g), 2 * n);
      std::vector<double> out(n);
      for (int k = 0; k < n; ++k) out[k] = 0.5 * (pairs[2 * k] + pairs[2 * k + 1]);
      return out;
    }
    default:
      throw std::invalid_argument("sample_eigenvalues: bad beta");
  }
}

/// (det(H - x_q) / det(H - x_p^-))^{gamma_abs} in log domain over the
/// (deduplicated) eigenvalues.
inline cplx char_ratio(const std::vector<double>& eigs, double x_p, double x_q,
                       double eta, int gamma_abs) {
  if (!(eta > 0.0)) throw std::invalid_argument("char_ratio: eta must be > 0");
  cplx acc = 0.0;
  for (double lam : eigs) {
    acc += std::log(cplx(lam - x_q, 0.0));
    acc -= std::log(cplx(lam - x_p, eta));
  }
  return std::exp(static_cast<double>(gamma_abs) * acc);
}

namespace detail {

inline constexpr std::uint64_t kChunk = 4096;

/// Fixed-size chunks processed by a small worker pool; per-chunk results are
/// folded in chunk order so worker count never changes any output bit.
template <class Acc, class Body>
std::vector<Acc> run_chunks(std::uint64_t samples, int workers, Body body) {
  const std::uint64_t n_chunks = (samples + kChunk - 1) / kChunk;
  std::vector<Acc> results(n_chunks);
  std::atomic<std::uint64_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= n_chunks) return;
      const std::uint64_t b = c * kChunk;
      const std::uint64_t e = std::min(samples, b + kChunk);
      results[c] = body(b, e);
    }
  };
  const int n_threads = std::max(1, std::min<int>(workers, static_cast<int>(n_chunks)));
  if (n_threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return results;
}

struct RatioMoments {
  // Sums of v = (Re r, Im r, Re n, Im n) and of the upper triangle of v v^T.
  double s[4] = {0, 0, 0, 0};
  double ss[10] = {0, 0, 0, 0, 0, 0, 0, 0, 0, 0};

  void add(cplx r, cplx nm) {
    const double v[4] = {r.real(), r.imag(), nm.real(), nm.imag()};
    int t = 0;
    for (int i = 0; i < 4; ++i) {
      s[i] += v[i];
      for (int j = i; j < 4; ++j) ss[t++] += v[i] * v[j];
    }
  }

  void merge(const RatioMoments& o) {
    for (int i = 0; i < 4; ++i) s[i] += o.s[i];
    for (int t = 0; t < 10; ++t) ss[t] += o.ss[t];
  }
};

// Ratio of means with the delta-method standard error of its imaginary part:
// Im(R/N) = (b c - a d) / (c^2 + d^2) with (a,b,c,d) the four mean components.
inline MCEstimate z1_from_moments(const RatioMoments& total, std::uint64_t samples,
                                  std::uint64_t seed) {
  const double S = static_cast<double>(samples);
  const double a = total.s[0] / S, bm = total.s[1] / S;
  const double c = total.s[2] / S, d = total.s[3] / S;
  const cplx z = cplx(a, bm) / cplx(c, d);

  double cov[4][4];
  {
    int t = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) {
        const double cij =
            (total.ss[t] - total.s[i] * total.s[j] / S) / std::max(S - 1.0, 1.0);
        cov[i][j] = cij;
        cov[j][i] = cij;
        ++t;
      }
  }
  const double den = c * c + d * d;
  const double num = bm * c - a * d;
  const double grad[4] = {-d / den, c / den, (bm * den - num * 2.0 * c) / (den * den),
                          (-a * den - num * 2.0 * d) / (den * den)};
  double var = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) var += grad[i] * cov[i][j] * grad[j];
  var = std::max(var, 0.0) / S;
  return MCEstimate{z, std::sqrt(var), samples, seed};
}

}  // namespace detail

/// Monte Carlo generating function Z_1 = <ratio(x_p, x_q)> / <ratio(ref, ref)>
/// with the reference at the midpoint, which realizes the normalization
/// Z_1 -> 1 at coincident arguments without evaluating C_{N beta}. One
/// eigendecomposition per sample feeds both points (common random numbers).
///
/// For beta = 4 the boson-fermion blocks of the underlying supermatrix model
/// interchange, so x_q carries the regularization in the denominator: the
/// ratio is the complex conjugate of char_ratio with swapped arguments.
/// With the literal beta = 1,2 ordering the route does not reproduce the
/// GSE kernel (verified against the exact N = 1 expectation).
inline MCEstimate z1_mc(const MCConfig& cfg, double x_p, double x_q) {
  if (cfg.samples < 100)
    throw InsufficientSamples("z1_mc: need at least 100 samples for a standard error");
  const double x_ref = 0.5 * (x_p + x_q);
  const double eta = cfg.eta > 0.0 ? cfg.eta : default_eta(cfg.ensemble, x_ref);
  const int g_abs = cfg.ensemble.gamma_abs();
  const bool swap = (cfg.ensemble.beta == 4);

  auto chunks = detail::run_chunks<detail::RatioMoments>(
      cfg.samples, cfg.workers, [&](std::uint64_t b, std::uint64_t e) {
        detail::RatioMoments acc;
        for (std::uint64_t s = b; s < e; ++s) {
          const std::vector<double> eigs = sample_eigenvalues(cfg.ensemble, cfg.seed, s);
          if (swap) {
            acc.add(std::conj(char_ratio(eigs, x_q, x_p, eta, g_abs)),
                    std::conj(char_ratio(eigs, x_ref, x_ref, eta, g_abs)));
          } else {
            acc.add(char_ratio(eigs, x_p, x_q, eta, g_abs),
                    char_ratio(eigs, x_ref, x_ref, eta, g_abs));
          }
        }
        return acc;
      });
  detail::RatioMoments total;
  for (const auto& c : chunks) total.merge(c);
  return detail::z1_from_moments(total, cfg.samples, cfg.seed);
}

/// Stochastic kernel route: difference quotient of z1_mc with propagated
/// uncertainty. Returns K_N^{(beta)}(x_q, x_p).
inline kernels::KernelValue kernel_mc(const MCConfig& cfg, double x_p, double x_q) {
  if (std::abs(x_p - x_q) < 1e-8)
    throw kernels::DegenerateArguments("kernel_mc: arguments degenerate; use the density");
  const MCEstimate z = z1_mc(cfg, x_p, x_q);
  const kernels::EnsembleSpec& spec = cfg.ensemble;
  const double pref = std::exp(0.5 * spec.gamma * (x_p * x_p - x_q * x_q)) /
                      (spec.gamma_abs() * special::pi);
  const double value = pref * (z.mean - 1.0).imag() / (x_q - x_p);
  const double unc = std::abs(pref) * z.std_error / std::abs(x_q - x_p);
  return kernels::KernelValue(value, kernels::Route::mc, unc);
}

/// Several kernel points from one pass over the samples: each matrix is
/// diagonalized once and its eigenvalues feed every (x_p, x_q) pair and its
/// reference point.
inline std::vector<kernels::KernelValue> kernel_mc_grid(
    const MCConfig& cfg, const std::vector<std::pair<double, double>>& pairs) {
  if (cfg.samples < 100)
    throw InsufficientSamples("kernel_mc_grid: need at least 100 samples");
  const std::size_t n_pairs = pairs.size();
  struct Point {
    double x_p, x_q, x_ref, eta;
  };
  std::vector<Point> pts;
  pts.reserve(n_pairs);
  for (const auto& [x_p, x_q] : pairs) {
    if (std::abs(x_p - x_q) < 1e-8)
      throw kernels::DegenerateArguments("kernel_mc_grid: degenerate pair");
    const double ref = 0.5 * (x_p + x_q);
    pts.push_back({x_p, x_q, ref,
                   cfg.eta > 0.0 ? cfg.eta : default_eta(cfg.ensemble, ref)});
  }
  const int g_abs = cfg.ensemble.gamma_abs();
  const bool swap = (cfg.ensemble.beta == 4);

  using Acc = std::vector<detail::RatioMoments>;
  auto chunks = detail::run_chunks<Acc>(
      cfg.samples, cfg.workers, [&](std::uint64_t b, std::uint64_t e) {
        Acc acc(n_pairs);
        for (std::uint64_t s = b; s < e; ++s) {
          const std::vector<double> eigs = sample_eigenvalues(cfg.ensemble, cfg.seed, s);
          for (std::size_t p = 0; p < n_pairs; ++p) {
            const Point& pt = pts[p];
            if (swap) {
              acc[p].add(std::conj(char_ratio(eigs, pt.x_q, pt.x_p, pt.eta, g_abs)),
                         std::conj(char_ratio(eigs, pt.x_ref, pt.x_ref, pt.eta, g_abs)));
            } else {
              acc[p].add(char_ratio(eigs, pt.x_p, pt.x_q, pt.eta, g_abs),
                         char_ratio(eigs, pt.x_ref, pt.x_ref, pt.eta, g_abs));
            }
          }
        }
        return acc;
      });

  std::vector<kernels::KernelValue> out;
  out.reserve(n_pairs);
  for (std::size_t p = 0; p < n_pairs; ++p) {
    detail::RatioMoments total;
    for (const auto& c : chunks) total.merge(c[p]);
    const MCEstimate z = detail::z1_from_moments(total, cfg.samples, cfg.seed);
    const Point& pt = pts[p];
    const double pref =
        std::exp(0.5 * cfg.ensemble.gamma * (pt.x_p * pt.x_p - pt.x_q * pt.x_q)) /
        (cfg.ensemble.gamma_abs() * special::pi);
    out.emplace_back(pref * (z.mean - 1.0).imag() / (pt.x_q - pt.x_p),
                     kernels::Route::mc,
                     std::abs(pref) * z.std_error / std::abs(pt.x_q - pt.x_p));
  }
  return out;
}

struct Histogram {
  double lo, hi;
  std::vector<double> centers;
  std::vector<double> density;
  std::vector<double> std_error;
  double mass;  // sum of density * bin width; equals N by bookkeeping
};

/// Normalized eigenvalue histogram (GSE doublets counted once). Out-of-range
/// eigenvalues are clamped into the edge bins so the total mass is exactly
/// the level count.
inline Histogram eigen_histogram(const MCConfig& cfg, double lo, double hi, int bins) {
  if (!(hi > lo) || bins < 1) throw std::invalid_argument("eigen_histogram: bad grid");
  if (cfg.samples < 1) throw InsufficientSamples("eigen_histogram: no samples");
  const double width = (hi - lo) / bins;

  struct Counts {
    std::vector<double> sum, sumsq;
  };
  auto chunks = detail::run_chunks<Counts>(
      cfg.samples, cfg.workers, [&](std::uint64_t b, std::uint64_t e) {
        Counts acc{std::vector<double>(bins, 0.0), std::vector<double>(bins, 0.0)};
        std::vector<double> local(bins);
        for (std::uint64_t s = b; s < e; ++s) {
          std::fill(local.begin(), local.end(), 0.0);
          for (double lam : sample_eigenvalues(cfg.ensemble, cfg.seed, s)) {
            int bin = static_cast<int>(std::floor((lam - lo) / width));
            bin = std::clamp(bin, 0, bins - 1);
            local[bin] += 1.0;
          }
          for (int k = 0; k < bins; ++k) {
            acc.sum[k] += local[k];
            acc.sumsq[k] += local[k] * local[k];
          }
        }
        return acc;
      });

  Histogram h{lo, hi, {}, {}, {}, 0.0};
  h.centers.resize(bins);
  h.density.resize(bins);
  h.std_error.resize(bins);
  const double S = static_cast<double>(cfg.samples);
  for (int k = 0; k < bins; ++k) {
    double sum = 0.0, sumsq = 0.0;
    for (const auto& c : chunks) {
      sum += c.sum[k];
      sumsq += c.sumsq[k];
    }
    h.centers[k] = lo + (k + 0.5) * width;
    h.density[k] = sum / (S * width);
    const double var = (sumsq - sum * sum / S) / std::max(S - 1.0, 1.0);
    h.std_error[k] = std::sqrt(std::max(var, 0.0) / S) / width;
    h.mass += h.density[k] * width;
  }
  return h;
}

/// Difference-quotient estimate of the level density from Z_1 at
/// (x - h, x + h): the finite-step realization of the source derivative.
inline double source_derivative_check(const MCConfig& cfg, double x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("source_derivative_check: h must be > 0");
  const MCEstimate z = z1_mc(cfg, x - h, x + h);
  return (z.mean - 1.0).imag() /
         (2.0 * cfg.ensemble.gamma_abs() * special::pi * h);
}

}  // namespace rmtk::mc
