// Copyright The entrobound Authors
// SPDX-License-Identifier: Apache-2.0

#include "entrobound/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace entrobound {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

TrialRng::TrialRng(const SeedSpec& seed, std::uint64_t trial) {
  // Key derivation: run splitmix over the combined key material so that a
  // change in any of (master, label, trial) reseeds the whole state.
  std::uint64_t key = seed.master_seed;
  key ^= rotl(fnv1a64(seed.stream_label), 17);
  key ^= splitmix64(key) + trial;
  for (auto& w : s_) w = splitmix64(key);
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t TrialRng::next_u64() {
  // xoshiro256++
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double TrialRng::uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double TrialRng::uniform_open01() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double TrialRng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_normal_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform_open01()));
  const double theta = 2.0 * std::numbers::pi * uniform01();
  cached_normal_ = r * std::sin(theta);
  has_cached_ = true;
  return r * std::cos(theta);
}

double TrialRng::exponential() { return -std::log(uniform_open01()); }

std::complex<double> TrialRng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

namespace detail {

std::vector<double> dirichlet_coords(int n, TrialRng& rng) {
  std::vector<double> v(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (double& x : v) {
    x = rng.exponential();
    sum += x;
  }
  for (double& x : v) x /= sum;
  return v;
}

}  // namespace detail

Spectrum sample_simplex(int n, const SeedSpec& seed, std::uint64_t trial) {
  if (n < 1) throw std::invalid_argument("sample_simplex: n must be >= 1");
  if (n == 1) return Spectrum({1.0});
  TrialRng rng(seed, trial);
  return Spectrum(detail::dirichlet_coords(n, rng));
}

PureState sample_haar_pure(int n, const SeedSpec& seed, std::uint64_t trial) {
  if (n < 1) throw std::invalid_argument("sample_haar_pure: n must be >= 1");
  TrialRng rng(seed, trial);
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.complex_normal();
  v /= v.norm();
  return PureState(std::move(v));
}

DensityMatrix sample_density(int n, int rank, const SeedSpec& seed, std::uint64_t trial) {
  if (n < 1) throw std::invalid_argument("sample_density: n must be >= 1");
  if (rank < 1 || rank > n) {
    throw std::domain_error("sample_density: rank must lie in [1, n]");
  }
  TrialRng rng(seed, trial);
  Eigen::MatrixXcd g(n, rank);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < rank; ++j) g(i, j) = rng.complex_normal();
  }
  Eigen::MatrixXcd m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix(std::move(m));
}

Channel sample_channel(int d_in, int d_out, int k, const SeedSpec& seed, std::uint64_t trial) {
  if (d_in < 1 || d_out < 1 || k < 1) {
    throw std::invalid_argument("sample_channel: dimensions and Kraus count must be positive");
  }
  if (static_cast<long long>(k) * d_out < d_in) {
    throw std::domain_error("sample_channel: k*d_out must be at least d_in for an isometry");
  }
  TrialRng rng(seed, trial);
  const int rows = k * d_out;
  Eigen::MatrixXcd g(rows, d_in);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < d_in; ++j) g(i, j) = rng.complex_normal();
  }
  // Haar isometry: thin QR with the R-diagonal phase correction.
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(rows, d_in);
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (int j = 0; j < d_in; ++j) {
    const std::complex<double> rjj = r(j, j);
    const double mag = std::abs(rjj);
    if (mag > 0.0) q.col(j) *= rjj / mag;
  }
  std::vector<Eigen::MatrixXcd> kraus;
  kraus.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) kraus.push_back(q.middleRows(i * d_out, d_out));
  return Channel(d_in, d_out, std::move(kraus));
}

}  // namespace entrobound
