// Copyright The entrobound Authors
// SPDX-License-Identifier: Apache-2.0
//
// Batch experiments over the core inequality: verification sweeps under two
// random measures, midpoint-concavity probes of the ratio f = s1/sqrt(e2)
// at the spectrum and matrix level, a directional-monotonicity probe of the
// entropy in each elementary symmetric polynomial, and the two figure-data
// grids.  Trials are independent counter-based streams, so every report is
// reproducible from (seed, trial) alone and aggregation is order-free.

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

#include "entrobound/config.hpp"
#include "entrobound/sampling.hpp"
#include "entrobound/spectra.hpp"

namespace entrobound {

enum class SweepMeasure { simplex, matrix };

// One near-equality instance found by a sweep, with its classification.
struct EqualityHit {
  std::uint64_t trial = 0;
  EqualityClass classification = EqualityClass::strict;
  double gap = 0.0;
};

// Aggregate of one verification sweep.  violations counts trials with
// gap < -tol::gap; min_gap/min_gap_trial is the argmin with ties broken
// toward the smaller trial index.  equality_hits stores at most the first
// 128 hits; equality_count is the full count.
struct SweepReport {
  int dimension = 0;
  long long trials = 0;
  double min_gap = 0.0;
  std::uint64_t min_gap_trial = 0;
  long long violations = 0;
  long long equality_count = 0;
  std::vector<EqualityHit> equality_hits;
  LogBase base = LogBase::natural;
  std::uint64_t seed = 0;
};

enum class ProbeLevel { spectrum, matrix };

// One recorded counterexample (or near-counterexample) of a probe.  For the
// concavity probes a/b hold the two drawn spectra (raw, unsorted) or, at
// the matrix level, matrix_a/matrix_b hold the two density matrices
// flattened row-major as interleaved re,im pairs.  For the monotonicity
// probe a holds the spectrum and k the index of the targeted e_k.
struct ProbeFinding {
  std::uint64_t trial = 0;
  int k = 0;
  double margin = 0.0;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> matrix_a;
  std::vector<double> matrix_b;
};

// Aggregate of one conjecture probe.  worst_margin is the minimum margin
// over all checks; counterexamples is nonempty exactly when
// worst_margin < -tol::probe (capped at the first 128 findings, with
// counterexample_count the full count).  resamples counts redraws forced
// by the preconditions (rank >= 2, interior/distinct entries, nonsingular
// Jacobian).
struct ProbeReport {
  std::string probe_kind;  // "concavity-spectrum" | "concavity-matrix" | "ek-monotone"
  int dimension = 0;
  long long trials = 0;
  double worst_margin = 0.0;
  std::uint64_t worst_trial = 0;
  long long counterexample_count = 0;
  long long resamples = 0;
  std::vector<ProbeFinding> counterexamples;
  LogBase base = LogBase::natural;
  std::uint64_t seed = 0;
};

struct Fig1Row {
  double x = 0.0;
  double entropy = 0.0;
  double bound = 0.0;
};

struct Fig2Row {
  double x = 0.0;
  double y = 0.0;
  double diff = 0.0;
};

// Sweep `trials` random instances of dimension n under the chosen measure
// (flat Dirichlet on the simplex, or Hilbert-Schmidt density matrices) and
// aggregate the inequality gap c_n*sqrt(e2) - s1 per trial, with n taken as
// each instance's numerical rank (floored at 2).
SweepReport verify_theorem(int n, long long trials, SweepMeasure measure, const SeedSpec& seed,
                           LogBase base = LogBase::natural);

// Same aggregation over caller-provided spectra (trial = position).  All
// spectra must share one dimension.  This is the injection path used to
// exercise the equality classifications deterministically.
SweepReport sweep_spectra(const std::vector<Spectrum>& spectra, LogBase base = LogBase::natural,
                          std::uint64_t seed_echo = 0);

// Midpoint-concavity probe of f: per trial draw a pair of unit-trace
// instances of rank >= 2, mix them (coordinate-wise at spectrum level, as
// matrices at matrix level), and record f(mid) - (f(a)+f(b))/2, which the
// concavity conjecture predicts to be >= 0.
ProbeReport probe_concavity(int n, long long trials, ProbeLevel level, const SeedSpec& seed,
                            LogBase base = LogBase::natural);

// Directional-monotonicity probe of the entropy in each e_k: per trial draw
// an interior spectrum with distinct entries, and for each k in {2..n}
// estimate dS/de_k along the direction that changes e_k alone (e_1 fixed),
// recording the estimate as the margin.  The probed conjecture predicts
// every margin > 0.  Near-degenerate draws (singular Jacobian, or entries
// too close for a reliable step) are resampled and counted.
ProbeReport probe_ek_monotone(int n, long long trials, const SeedSpec& seed,
                              LogBase base = LogBase::natural);

// The probe kernel, exposed for cross-checks: estimate of dS/de_k at s
// along the constraint direction (all other e_j fixed, e_1 fixed), via a
// relative step of 1e-5 in e_k and one Richardson refinement.  The step is
// additionally capped so no coordinate moves farther than 1e-3 of the
// smallest entry or neighbor gap: the constraint direction grows without
// bound as entries approach each other, and an uncapped step would cross
// the coordinate collision it is near.  Requires an interior spectrum;
// throws std::domain_error when the Jacobian of (e_2..e_n) is singular,
// when entries are too close for a reliable capped step, or when the step
// leaves the positive cone.
double ek_directional_derivative(const Spectrum& s, int k, LogBase base = LogBase::natural);

// Rows (x, S, bound) at x = i/resolution, i = 0..resolution, with
// S = eta(x) + eta(1-x) and bound = 2*log(2)*sqrt(x*(1-x)) in the given
// base.  bound - S >= 0 with equality exactly at x in {0, 1/2, 1}.
std::vector<Fig1Row> fig1_data(int resolution, LogBase base = LogBase::natural);

// Rows (x, y, diff) over the grid x = i/res, y = j/res, i + j <= res, with
// diff = c_3*sqrt(e2) - S of the spectrum (x, y, 1-x-y).  When the center
// (1/3, 1/3) is not a grid point it is appended as a final row.  diff >= 0,
// vanishing at the three corners and the center; the grid maximum lies on
// a boundary edge.
std::vector<Fig2Row> fig2_data(int resolution, LogBase base = LogBase::natural);

namespace detail {
// Midpoint-concavity margin of f for two explicit coordinate vectors
// (unit-sum, rank >= 2 each); symmetric under any common permutation.
// Exposed so recorded findings can be replayed bit-for-bit.
double concavity_margin_spectrum(const std::vector<double>& a, const std::vector<double>& b,
                                 LogBase base = LogBase::natural);
// Matrix-level margin for two explicit density matrices.
double concavity_margin_matrix(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                               LogBase base = LogBase::natural);
}  // namespace detail

}  // namespace entrobound
