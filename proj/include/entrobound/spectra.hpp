// Copyright The entrobound Authors
// SPDX-License-Identifier: Apache-2.0
//
// Spectral primitives: eigenvalue vectors, Hermitian and density matrices,
// the entropy functionals S and S1, the elementary symmetric polynomials,
// the sharpness constant c_n, the scale-free ratio f = S1/sqrt(e2), its
// gradient identities, and the inequality gap with equality classification.
//
// Conventions used throughout:
//   - Spectra are stored non-increasing; entries are nonnegative after a
//     rounding-level clamp at construction.
//   - All entropic quantities use natural log internally and are rescaled
//     to the requested LogBase on the way out, so gradients and bound
//     constants stay mutually consistent in any base.

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "entrobound/config.hpp"

namespace entrobound {

// Non-increasing vector of nonnegative eigenvalues.  Construction sorts the
// input, clamps entries in (-clamp*scale, 0) to zero (scale = largest
// magnitude), and rejects anything more negative as non-PSD.
class Spectrum {
 public:
  explicit Spectrum(std::vector<double> values);

  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  // Sum of all entries (e_1, the trace of the underlying matrix).
  double sum() const noexcept { return sum_; }

  // Number of entries exceeding tol::rank times the largest entry.
  int numerical_rank() const noexcept { return rank_; }

 private:
  std::vector<double> values_;
  double sum_ = 0.0;
  int rank_ = 0;
};

// Square complex matrix validated to be conjugate-symmetric within
// tol::herm (relative to the largest entry magnitude) and then exactly
// symmetrized, so downstream eigensolves see a clean input.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(Eigen::MatrixXcd entries);

  const Eigen::MatrixXcd& matrix() const noexcept { return entries_; }
  Eigen::Index dim() const noexcept { return entries_.rows(); }

 private:
  Eigen::MatrixXcd entries_;
};

// Hermitian matrix validated PSD (eigenvalues >= -clamp relative) with a
// fixed trace (unit by default).  The eigendecomposition performed by the
// validation is kept: spectrum() is free afterwards, which the batch
// experiments rely on.
class DensityMatrix {
 public:
  explicit DensityMatrix(Eigen::MatrixXcd entries, double trace_tol = tol::trace);
  explicit DensityMatrix(const HermitianMatrix& m, double trace_tol = tol::trace);

  const Eigen::MatrixXcd& matrix() const noexcept { return entries_; }
  Eigen::Index dim() const noexcept { return entries_.rows(); }
  const Spectrum& spectrum() const noexcept { return spectrum_; }

  // Caller guarantees `entries` is Hermitian PSD with the given spectrum;
  // used where both are known by construction (e.g. rank-one projectors).
  static DensityMatrix from_validated(Eigen::MatrixXcd entries, Spectrum spectrum);

 private:
  DensityMatrix(Eigen::MatrixXcd entries, Spectrum spectrum, int);
  Eigen::MatrixXcd entries_;
  Spectrum spectrum_;
};

enum class EqualityClass { rank_one, uniform, strict };

std::string_view equality_class_name(EqualityClass c);

// Both sides of the bound c_n*sqrt(e2) >= s1, their difference, and the
// equality classification at tolerance tol::eq on the normalized gap.
struct GapReport {
  double s1 = 0.0;
  double e2 = 0.0;
  double c_n = 0.0;
  double gap = 0.0;
  int n_used = 0;
  EqualityClass classification = EqualityClass::strict;
};

// eta(x) = -x*log(x) with eta(0) = 0 exactly.  Negative x is a domain error.
double eta(double x, LogBase base = LogBase::natural);

// Von Neumann entropy of a unit-trace spectrum: sum of eta(x_i).  The trace
// must be 1 within tol::trace; general positive spectra go through s1.
double entropy(const Spectrum& s, LogBase base = LogBase::natural);

// Degree-1 homogeneous extension of the entropy to the positive cone:
// sum eta(x_i) - eta(sum x_i).  Zero for the all-zero spectrum.
double s1(const Spectrum& s, LogBase base = LogBase::natural);

// Second elementary symmetric polynomial via the trace formula
// ((sum x)^2 - sum x^2)/2, clamped at zero against rounding.
double e2_from_spectrum(const Spectrum& s);

// Same quantity from matrix traces directly, ((tr m)^2 - tr m^2)/2, avoiding
// the rounding of an eigendecomposition in the value.  The PSD *check* does
// decompose; a matrix with an eigenvalue below -clamp (relative) is rejected.
double e2_from_matrix(const HermitianMatrix& m);
double e2_from_matrix(const DensityMatrix& m);  // validated at construction

// All N elementary symmetric polynomials e_1..e_N by the incremental
// characteristic-coefficient recurrence (numerically stable for
// nonnegative inputs: every update is a nonnegative fused accumulation).
std::vector<double> elementary_symmetric(const Spectrum& s);

// The sharpness constant c_n = log(n) * sqrt(2n/(n-1)), n >= 2.
double c_constant(int n, LogBase base = LogBase::natural);

// The scale-free ratio f = s1/sqrt(e2); requires numerical rank >= 2.
double ratio_f(const Spectrum& s, LogBase base = LogBase::natural);

// Gap report for c_n*sqrt(e2) - s1.  n defaults to the numerical rank of s
// (floored at 2 so the constant stays defined; both sides vanish at rank
// one anyway).  An explicit n_override below the numerical rank is a domain
// error: the bound is not guaranteed there.
GapReport inequality_gap(const Spectrum& s, LogBase base = LogBase::natural,
                         std::optional<int> n_override = std::nullopt);

// Gradient of s1: component m is log(sum x / x_m).  Interior spectra only.
std::vector<double> grad_s1(const Spectrum& s, LogBase base = LogBase::natural);

// Gradient of e2: component m is sum x - x_m.
std::vector<double> grad_e2(const Spectrum& s);

// Gradient of f: e2^{-1/2} log(x/x_m) - (x - x_m) e2^{-3/2} s1 / 2.
// Interior spectra of rank >= 2 only.  Satisfies the degree-zero Euler
// identity sum_m x_m df/dx_m = 0 up to rounding.
std::vector<double> grad_f(const Spectrum& s, LogBase base = LogBase::natural);

// Eigenvalues of a Hermitian matrix, sorted non-increasing, with the PSD
// clamp applied.  An eigenvalue below the clamp threshold is a domain error.
Spectrum eigenvalues(const HermitianMatrix& m);

}  // namespace entrobound
