// Copyright The entrobound Authors
// SPDX-License-Identifier: Apache-2.0
//
// Pure states, Kraus-form channels, bipartite shapes, and the partial
// trace.  Channels are completely positive trace-preserving maps given by a
// nonempty Kraus family; the composite index convention for bipartite
// systems is row-major over (a, b): composite = a*dim_b + b.

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "entrobound/config.hpp"
#include "entrobound/spectra.hpp"

namespace entrobound {

// Unit vector of complex amplitudes.  The norm must be 1 within tol::norm;
// the stored amplitudes are renormalized exactly after that check.
class PureState {
 public:
  explicit PureState(Eigen::VectorXcd amplitudes);

  const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }
  Eigen::Index dim() const noexcept { return amplitudes_.size(); }

 private:
  Eigen::VectorXcd amplitudes_;
};

// Trace-preserving map given by Kraus operators K_i (each dim_out x dim_in)
// with sum K^dagger K = identity within tol::tp.
class Channel {
 public:
  Channel(Eigen::Index dim_in, Eigen::Index dim_out, std::vector<Eigen::MatrixXcd> kraus);

  Eigen::Index dim_in() const noexcept { return dim_in_; }
  Eigen::Index dim_out() const noexcept { return dim_out_; }
  const std::vector<Eigen::MatrixXcd>& kraus() const noexcept { return kraus_; }

 private:
  Eigen::Index dim_in_;
  Eigen::Index dim_out_;
  std::vector<Eigen::MatrixXcd> kraus_;
};

struct BipartiteShape {
  Eigen::Index dim_a = 1;
  Eigen::Index dim_b = 1;
  Eigen::Index total() const noexcept { return dim_a * dim_b; }
};

// |psi><psi| as a validated density matrix (spectrum known by construction).
DensityMatrix projector(const PureState& psi);

// Channel application sum_i K_i rho K_i^dagger.  Trace is preserved within
// tol::tp (the channel's own validation tolerance).
DensityMatrix apply(const Channel& phi, const DensityMatrix& rho);

// tr[Phi(|psi><psi|)^2], in [1/dim_out, 1] up to rounding.
double output_purity(const Channel& phi, const PureState& psi);

// Reduction to subsystem A: (tr_B rho)[a,a'] = sum_b rho[a*dB+b, a'*dB+b].
DensityMatrix partial_trace_b(const DensityMatrix& rho, const BipartiteShape& shape);

// Max numerical rank of Phi(|psi><psi|) over `trials` seeded Haar-random
// pure inputs.  A sampled lower estimate of the true maximum; it can never
// exceed min(dim_out, #Kraus).  Deterministic for a fixed seed.
int output_rank_estimate(const Channel& phi, int trials, std::uint64_t seed);

}  // namespace entrobound
