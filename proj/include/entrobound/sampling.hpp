// Copyright The entrobound Authors
// SPDX-License-Identifier: Apache-2.0
//
// Seedable, counter-style random generators for spectra, pure states,
// density matrices, and channels.  Every draw is a pure function of
// (master_seed, stream_label, trial): trials are independent streams, so
// batches are order-independent and bit-reproducible.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "entrobound/channels.hpp"
#include "entrobound/spectra.hpp"

namespace entrobound {

struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::string stream_label;
};

// Per-trial generator: a xoshiro256++ stream keyed by hashing
// (master_seed, stream_label, trial).  Cheap to construct per trial.
class TrialRng {
 public:
  TrialRng(const SeedSpec& seed, std::uint64_t trial);

  std::uint64_t next_u64();
  double uniform01();       // [0, 1)
  double uniform_open01();  // (0, 1), safe under log
  double normal();          // standard normal (Box-Muller, pair-cached)
  double exponential();     // rate-1 exponential
  std::complex<double> complex_normal();  // independent N(0,1) re and im

 private:
  std::uint64_t s_[4];
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

namespace detail {
// Raw flat-Dirichlet coordinates: normalized rate-1 exponentials, unsorted.
// The mixing experiments need the pre-sort coordinates.
std::vector<double> dirichlet_coords(int n, TrialRng& rng);
}  // namespace detail

// Unit-trace spectrum distributed uniformly (flat Dirichlet) on the simplex.
Spectrum sample_simplex(int n, const SeedSpec& seed, std::uint64_t trial);

// Rotation-invariant unit vector: normalized vector of complex Gaussians.
PureState sample_haar_pure(int n, const SeedSpec& seed, std::uint64_t trial);

// G G^dagger / tr(G G^dagger) for an n x rank complex Gaussian G.
DensityMatrix sample_density(int n, int rank, const SeedSpec& seed, std::uint64_t trial);

// Kraus family sliced from a Haar-distributed isometry of d_in into
// d_out x k; trace-preserving by construction.  Requires k*d_out >= d_in.
Channel sample_channel(int d_in, int d_out, int k, const SeedSpec& seed, std::uint64_t trial);

}  // namespace entrobound
