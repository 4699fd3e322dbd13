// Copyright The entrobound Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "entrobound/channels.hpp"
#include "entrobound/sampling.hpp"

using namespace entrobound;

namespace {
const std::complex<double> kI(0.0, 1.0);

Channel identity_channel(Eigen::Index d) {
  return Channel(d, d, {Eigen::MatrixXcd::Identity(d, d)});
}

// (1/2){I, X, Y, Z}: sends every qubit state to I/2.
Channel depolarizing_qubit() {
  Eigen::MatrixXcd x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, -kI, kI, 0;
  z << 1, 0, 0, -1;
  return Channel(2, 2,
                 {0.5 * Eigen::MatrixXcd::Identity(2, 2), 0.5 * x, 0.5 * y, 0.5 * z});
}

DensityMatrix bell_state() {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
  return DensityMatrix(std::move(m));
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}
}  // namespace

TEST_CASE("pure states validate and renormalize") {
  Eigen::VectorXcd v(2);
  v << 0.6, 0.8;
  const PureState psi(v);
  CHECK(psi.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(psi.dim() == 2);

  Eigen::VectorXcd bad(2);
  bad << 1.0, 1.0;
  CHECK_THROWS_AS((PureState(bad)), std::domain_error);
  CHECK_THROWS_AS(PureState(Eigen::VectorXcd()), std::invalid_argument);

  SUBCASE("projector is the rank-one density matrix") {
    const DensityMatrix p = projector(psi);
    CHECK(p.dim() == 2);
    CHECK(p.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK((p.matrix() * p.matrix() - p.matrix()).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(p.spectrum()[0] == 1.0);
    CHECK(p.spectrum().numerical_rank() == 1);
  }
}

TEST_CASE("channel construction validates shape and trace preservation") {
  CHECK_THROWS_AS(Channel(2, 2, {}), std::invalid_argument);
  CHECK_THROWS_AS(Channel(2, 2, {Eigen::MatrixXcd::Identity(3, 2)}), std::invalid_argument);
  // A lone contraction is not trace preserving.
  CHECK_THROWS_AS(Channel(2, 2, {0.5 * Eigen::MatrixXcd::Identity(2, 2)}), std::domain_error);
  CHECK_THROWS_AS(Channel(0, 2, {Eigen::MatrixXcd::Identity(2, 2)}), std::invalid_argument);

  const Channel dep = depolarizing_qubit();
  CHECK(dep.dim_in() == 2);
  CHECK(dep.dim_out() == 2);
  CHECK(dep.kraus().size() == 4);
}

TEST_CASE("channel application") {
  const SeedSpec seed{31, "apply"};

  SUBCASE("identity channel is the identity map") {
    const Channel id = identity_channel(3);
    for (std::uint64_t t = 0; t < 10; ++t) {
      const DensityMatrix rho = sample_density(3, 3, seed, t);
      const DensityMatrix out = apply(id, rho);
      CHECK((out.matrix() - rho.matrix()).cwiseAbs().maxCoeff() <= 1e-14);
    }
  }
  SUBCASE("the fully depolarizing qubit sends everything to I/2") {
    const Channel dep = depolarizing_qubit();
    for (std::uint64_t t = 0; t < 10; ++t) {
      const DensityMatrix rho = sample_density(2, 2, seed, t);
      const DensityMatrix out = apply(dep, rho);
      CHECK((out.matrix() - 0.5 * Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() <=
            1e-14);
    }
  }
  SUBCASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(apply(identity_channel(3), sample_density(2, 2, seed, 0)),
                    std::domain_error);
  }
  SUBCASE("output purity brackets") {
    const PureState psi = sample_haar_pure(2, seed, 42);
    CHECK(output_purity(identity_channel(2), psi) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(output_purity(depolarizing_qubit(), psi) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("partial trace over the second factor") {
  SUBCASE("bell state reduces to the maximally mixed qubit") {
    const DensityMatrix red = partial_trace_b(bell_state(), BipartiteShape{2, 2});
    CHECK((red.matrix() - 0.5 * Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() <=
          1e-14);
  }
  SUBCASE("product states reduce to their first factor") {
    Eigen::MatrixXcd a(2, 2), b(2, 2);
    a << 0.7, 0.1 * kI, -0.1 * kI, 0.3;
    b << 0.5, 0.25, 0.25, 0.5;
    const DensityMatrix joint(kron(a, b));
    const DensityMatrix red = partial_trace_b(joint, BipartiteShape{2, 2});
    CHECK((red.matrix() - a).cwiseAbs().maxCoeff() <= 1e-13);
  }
  SUBCASE("shape must factor the dimension") {
    CHECK_THROWS_AS(partial_trace_b(bell_state(), BipartiteShape{3, 2}), std::domain_error);
  }
}

TEST_CASE("sampled output-rank estimate") {
  // Pure inputs stay pure through the identity channel.
  CHECK(output_rank_estimate(identity_channel(2), 16, 5) == 1);
  // The fully depolarizing qubit always outputs the rank-2 state I/2.
  CHECK(output_rank_estimate(depolarizing_qubit(), 4, 5) == 2);
  // Deterministic in the seed.
  const Channel phi = sample_channel(3, 3, 2, SeedSpec{41, "rank-est"}, 0);
  CHECK(output_rank_estimate(phi, 12, 9) == output_rank_estimate(phi, 12, 9));
  CHECK_THROWS_AS(output_rank_estimate(phi, 0, 9), std::invalid_argument);
}
