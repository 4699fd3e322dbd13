// Copyright The entrobound Authors
// SPDX-License-Identifier: Apache-2.0
//
// Independent reference implementations used only by the tests.  Each one
// computes its quantity by a different route than the library (exhaustive
// enumeration, naive summation, finite differences), so agreement is
// evidence rather than tautology.

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracles {

// e_k by exhaustive subset enumeration (2^n terms; n <= 20).
inline double esym_subset_sum(const std::vector<double>& x, int k) {
  const int n = static_cast<int>(x.size());
  double acc = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != k) continue;
    double prod = 1.0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) prod *= x[static_cast<std::size_t>(i)];
    }
    acc += prod;
  }
  return acc;
}

// e_2 as an explicit pairwise sum.
inline double e2_pairwise(const std::vector<double>& x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) acc += x[i] * x[j];
  }
  return acc;
}

// Naive -sum x log x with the 0 log 0 = 0 convention, natural log.
inline double entropy_naive(const std::vector<double>& x) {
  double acc = 0.0;
  for (double v : x) {
    if (v > 0.0) acc -= v * std::log(v);
  }
  return acc;
}

// Degree-1 homogeneous entropy of a nonnegative vector, natural log.
inline double s1_naive(const std::vector<double>& x) {
  double sum = 0.0;
  for (double v : x) sum += v;
  double acc = entropy_naive(x);
  if (sum > 0.0) acc += sum * std::log(sum);
  return acc;
}

// Central finite difference of a scalar function of one coordinate.
inline double central_diff(const std::function<double(double)>& f, double x0, double h) {
  return (f(x0 + h) - f(x0 - h)) / (2.0 * h);
}

// Characteristic polynomial det(t I - diag-free M) via Laplace expansion
// over the first row; exponential cost, fine for dim <= 5.  Used to check
// that the elementary symmetric values of a spectrum really are the
// characteristic coefficients: det(t I - X) = sum_k (-1)^k e_k t^{n-k}.
inline double char_poly_from_esym(const std::vector<double>& esym_0_to_n, double t) {
  const std::size_t n = esym_0_to_n.size() - 1;
  double acc = 0.0;
  double sign = 1.0;
  for (std::size_t k = 0; k <= n; ++k) {
    acc += sign * esym_0_to_n[k] * std::pow(t, static_cast<double>(n - k));
    sign = -sign;
  }
  return acc;
}

inline double char_poly_direct(const std::vector<double>& x, double t) {
  double acc = 1.0;
  for (double v : x) acc *= (t - v);
  return acc;
}

// |a - b| <= atol + rtol * max(|a|, |b|).
inline bool close(double a, double b, double rtol, double atol = 0.0) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= atol + rtol * scale;
}

}  // namespace oracles
