// Copyright The entrobound Authors
// SPDX-License-Identifier: Apache-2.0
//
// Shared configuration: logarithm bases and the library-wide numerical
// tolerances.  Every tolerance used by the library lives here under a name,
// so tests and callers can reference the same constants instead of scattering
// magic numbers.

#pragma once

#include <cmath>
#include <string_view>

namespace entrobound {

// Base of the logarithm used for entropies.  All internal formulas are
// written in natural log and rescaled, so switching base rescales entropy,
// gradients and bound constants coherently.
enum class LogBase { natural, base2, base10 };

// Multiplier converting a natural-log quantity into the requested base.
inline double log_scale(LogBase base) {
  switch (base) {
    case LogBase::base2:  return 1.0 / std::log(2.0);
    case LogBase::base10: return 1.0 / std::log(10.0);
    default:              return 1.0;
  }
}

inline std::string_view log_base_name(LogBase base) {
  switch (base) {
    case LogBase::base2:  return "2";
    case LogBase::base10: return "10";
    default:              return "e";
  }
}

namespace tol {

// Negative eigenvalues larger than -clamp * max|eigenvalue| are treated as
// rounding debris and clamped to zero; anything more negative is an error.
inline constexpr double clamp = 1e-10;

// Relative threshold for counting an eigenvalue toward the numerical rank.
inline constexpr double rank = 1e-9;

// Normalized gap below which a spectrum is classified as an equality case.
inline constexpr double eq = 1e-10;

// Margin for "the inequality holds" in batch verification (scaled gap).
inline constexpr double gap = 1e-9;

// Relative agreement required between analytic and finite-difference
// gradients.
inline constexpr double fd = 1e-6;

// Scaled residual allowed in the Euler identity for the homogeneous ratio.
inline constexpr double euler = 1e-8;

// Hermiticity check: max |m - m^dagger| relative to max |m|.
inline constexpr double herm = 1e-10;

// Allowed deviation of a density matrix trace from its declared value.
inline constexpr double trace = 1e-9;

// Agreement between spectrum-side and matrix-side functionals.
inline constexpr double spec = 1e-9;

// Trace preservation defect allowed for a Kraus set: ||sum K^t K - I||.
inline constexpr double tp = 1e-8;

// Norm defect allowed for a state vector before renormalization.
inline constexpr double norm = 1e-10;

// Recombination defect allowed for an ensemble: ||sum p_j psi psi^t - rho||.
inline constexpr double ensemble = 1e-9;

// Slack granted to numerical probes before a sign flip counts as a finding.
inline constexpr double probe = 1e-9;

}  // namespace tol
}  // namespace entrobound
