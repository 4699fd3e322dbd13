// Copyright The entrobound Authors
// SPDX-License-Identifier: Apache-2.0

#include "entrobound/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace entrobound {

namespace {

[[noreturn]] void fail_domain(const std::string& msg) { throw std::domain_error(msg); }

int rank_of(const std::vector<double>& sorted_desc) {
  if (sorted_desc.empty()) return 0;
  const double cut = tol::rank * sorted_desc.front();
  if (sorted_desc.front() <= 0.0) return 0;
  int r = 0;
  for (double v : sorted_desc) {
    if (v > cut) ++r;
  }
  return r;
}

}  // namespace

Spectrum::Spectrum(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("Spectrum: need at least one entry");
  double max_abs = 0.0;
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("Spectrum: non-finite entry");
    max_abs = std::max(max_abs, std::abs(v));
  }
  const double floor = -tol::clamp * max_abs;
  for (double& v : values_) {
    if (v < 0.0) {
      if (v < floor) {
        fail_domain("Spectrum: negative entry " + std::to_string(v) +
                    " below the clamp threshold (non-PSD input)");
      }
      v = 0.0;
    }
  }
  std::sort(values_.begin(), values_.end(), std::greater<double>());
  sum_ = 0.0;
  for (double v : values_) sum_ += v;
  rank_ = rank_of(values_);
}

HermitianMatrix::HermitianMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("HermitianMatrix: square nonempty matrix required");
  }
  const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
  const double defect = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (defect > tol::herm * scale) {
    fail_domain("HermitianMatrix: conjugate-symmetry defect " + std::to_string(defect) +
                " exceeds tolerance");
  }
  entries_ = 0.5 * (entries_ + entries_.adjoint().eval());
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries, double trace_tol)
    : DensityMatrix(HermitianMatrix(std::move(entries)), trace_tol) {}

DensityMatrix::DensityMatrix(const HermitianMatrix& m, double trace_tol)
    : entries_(m.matrix()), spectrum_({1.0}) {
  const double tr = entries_.trace().real();
  if (std::abs(tr - 1.0) > trace_tol) {
    fail_domain("DensityMatrix: trace " + std::to_string(tr) + " is not 1 within tolerance");
  }
  // The PSD validation below is also the one eigendecomposition this state
  // will ever need; keep its result.
  spectrum_ = eigenvalues(m);
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries, Spectrum spectrum, int)
    : entries_(std::move(entries)), spectrum_(std::move(spectrum)) {}

DensityMatrix DensityMatrix::from_validated(Eigen::MatrixXcd entries, Spectrum spectrum) {
  return DensityMatrix(std::move(entries), std::move(spectrum), 0);
}

std::string_view equality_class_name(EqualityClass c) {
  switch (c) {
    case EqualityClass::rank_one: return "rank-one-equality";
    case EqualityClass::uniform: return "uniform-equality";
    default: return "strict";
  }
}

double eta(double x, LogBase base) {
  if (x < 0.0 || !std::isfinite(x)) fail_domain("eta: argument must be a finite nonnegative real");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log(x) * log_scale(base);
}

double entropy(const Spectrum& s, LogBase base) {
  if (std::abs(s.sum() - 1.0) > tol::trace) {
    fail_domain("entropy: spectrum trace " + std::to_string(s.sum()) +
                " is not 1 within tolerance (use s1 for general positive spectra)");
  }
  double acc = 0.0;
  for (double v : s.values()) acc += eta(v);
  return acc * log_scale(base);
}

double s1(const Spectrum& s, LogBase base) {
  double acc = 0.0;
  for (double v : s.values()) acc += eta(v);
  acc -= eta(s.sum());
  // Rounding can leave a tiny negative where the exact value is zero
  // (rank one, or all entries equal to the sum); the quantity itself is
  // nonnegative by concavity.
  return std::max(0.0, acc) * log_scale(base);
}

double e2_from_spectrum(const Spectrum& s) {
  double sq = 0.0;
  for (double v : s.values()) sq += v * v;
  const double t = s.sum();
  return std::max(0.0, 0.5 * (t * t - sq));
}

double e2_from_matrix(const HermitianMatrix& m) {
  // Validation decomposes; the value itself comes from traces only.
  (void)eigenvalues(m);
  const double tr = m.matrix().trace().real();
  const double tr2 = m.matrix().squaredNorm();  // tr(m^2) for Hermitian m
  return std::max(0.0, 0.5 * (tr * tr - tr2));
}

double e2_from_matrix(const DensityMatrix& m) {
  const double tr = m.matrix().trace().real();
  const double tr2 = m.matrix().squaredNorm();
  return std::max(0.0, 0.5 * (tr * tr - tr2));
}

std::vector<double> elementary_symmetric(const Spectrum& s) {
  const std::size_t n = s.size();
  std::vector<double> c(n + 1, 0.0);
  c[0] = 1.0;
  std::size_t filled = 0;
  for (double x : s.values()) {
    ++filled;
    for (std::size_t k = filled; k >= 1; --k) {
      c[k] = std::fma(x, c[k - 1], c[k]);
    }
  }
  return std::vector<double>(c.begin() + 1, c.end());
}

double c_constant(int n, LogBase base) {
  if (n < 2) fail_domain("c_constant: n must be at least 2");
  return std::log(static_cast<double>(n)) * log_scale(base) *
         std::sqrt(2.0 * n / (n - 1.0));
}

double ratio_f(const Spectrum& s, LogBase base) {
  if (s.numerical_rank() < 2) {
    fail_domain("ratio_f: undefined below rank 2 (both numerator and denominator vanish)");
  }
  return s1(s, base) / std::sqrt(e2_from_spectrum(s));
}

GapReport inequality_gap(const Spectrum& s, LogBase base, std::optional<int> n_override) {
  const int rank = s.numerical_rank();
  if (n_override && *n_override < rank) {
    fail_domain("inequality_gap: n_override " + std::to_string(*n_override) +
                " is below the numerical rank " + std::to_string(rank) +
                "; the bound is not guaranteed there");
  }
  const int n_req = n_override ? *n_override : rank;
  // The constant is undefined below n = 2; at rank <= 1 both sides vanish,
  // so evaluating with n = 2 keeps the report well defined and exact.
  const int n_used = std::max(n_req, 2);

  GapReport r;
  r.s1 = s1(s, base);
  r.e2 = e2_from_spectrum(s);
  r.c_n = c_constant(n_used, base);
  r.n_used = n_used;
  r.gap = r.c_n * std::sqrt(r.e2) - r.s1;

  const double scale = r.c_n * std::max({std::sqrt(r.e2), r.s1, 1.0});
  if (std::abs(r.gap) <= tol::eq * scale) {
    r.classification = rank <= 1 ? EqualityClass::rank_one : EqualityClass::uniform;
  } else {
    r.classification = EqualityClass::strict;
  }
  return r;
}

std::vector<double> grad_s1(const Spectrum& s, LogBase base) {
  const double x = s.sum();
  const double k = log_scale(base);
  std::vector<double> g(s.size());
  for (std::size_t m = 0; m < s.size(); ++m) {
    if (s[m] <= 0.0) fail_domain("grad_s1: defined only on strictly positive spectra");
    g[m] = std::log(x / s[m]) * k;
  }
  return g;
}

std::vector<double> grad_e2(const Spectrum& s) {
  const double x = s.sum();
  std::vector<double> g(s.size());
  for (std::size_t m = 0; m < s.size(); ++m) g[m] = x - s[m];
  return g;
}

std::vector<double> grad_f(const Spectrum& s, LogBase base) {
  if (s.numerical_rank() < 2) fail_domain("grad_f: undefined below rank 2");
  const double x = s.sum();
  const double k = log_scale(base);
  const double e2 = e2_from_spectrum(s);
  const double v = s1(s, base);
  const double inv_sqrt = 1.0 / std::sqrt(e2);
  const double inv_32 = inv_sqrt / e2;
  std::vector<double> g(s.size());
  for (std::size_t m = 0; m < s.size(); ++m) {
    if (s[m] <= 0.0) fail_domain("grad_f: defined only on strictly positive spectra");
    g[m] = inv_sqrt * std::log(x / s[m]) * k - 0.5 * (x - s[m]) * inv_32 * v;
  }
  return g;
}

Spectrum eigenvalues(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.matrix(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) fail_domain("eigenvalues: eigensolver failed to converge");
  const Eigen::VectorXd& ev = es.eigenvalues();
  std::vector<double> vals(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) vals[static_cast<std::size_t>(i)] = ev[ev.size() - 1 - i];
  return Spectrum(std::move(vals));  // clamp and PSD rejection happen here
}

}  // namespace entrobound
