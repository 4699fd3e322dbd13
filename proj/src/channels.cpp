// Copyright The entrobound Authors
// SPDX-License-Identifier: Apache-2.0

#include "entrobound/channels.hpp"

#include <stdexcept>
#include <string>
#include <utility>

#include "entrobound/sampling.hpp"

namespace entrobound {

PureState::PureState(Eigen::VectorXcd amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw std::invalid_argument("PureState: empty amplitude vector");
  const double nrm = amplitudes_.norm();
  if (std::abs(nrm - 1.0) > tol::norm) {
    throw std::domain_error("PureState: norm " + std::to_string(nrm) + " is not 1 within tolerance");
  }
  amplitudes_ /= nrm;
}

Channel::Channel(Eigen::Index dim_in, Eigen::Index dim_out, std::vector<Eigen::MatrixXcd> kraus)
    : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)) {
  if (dim_in_ < 1 || dim_out_ < 1) throw std::invalid_argument("Channel: dimensions must be positive");
  if (kraus_.empty()) throw std::invalid_argument("Channel: at least one Kraus operator required");
  for (const auto& k : kraus_) {
    if (k.rows() != dim_out_ || k.cols() != dim_in_) {
      throw std::invalid_argument("Channel: Kraus operator shape mismatch");
    }
  }
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim_in_, dim_in_);
  for (const auto& k : kraus_) acc += k.adjoint() * k;
  const double defect = (acc - Eigen::MatrixXcd::Identity(dim_in_, dim_in_)).cwiseAbs().maxCoeff();
  if (defect > tol::tp) {
    throw std::domain_error("Channel: trace-preservation defect " + std::to_string(defect) +
                            " exceeds tolerance");
  }
}

DensityMatrix projector(const PureState& psi) {
  const Eigen::Index d = psi.dim();
  Eigen::MatrixXcd p = psi.amplitudes() * psi.amplitudes().adjoint();
  std::vector<double> spec(static_cast<std::size_t>(d), 0.0);
  spec[0] = 1.0;
  return DensityMatrix::from_validated(std::move(p), Spectrum(std::move(spec)));
}

DensityMatrix apply(const Channel& phi, const DensityMatrix& rho) {
  if (rho.dim() != phi.dim_in()) {
    throw std::domain_error("apply: state dimension " + std::to_string(rho.dim()) +
                            " does not match channel input " + std::to_string(phi.dim_in()));
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(phi.dim_out(), phi.dim_out());
  for (const auto& k : phi.kraus()) out += k * rho.matrix() * k.adjoint();
  out = 0.5 * (out + out.adjoint().eval());  // shed rounding skew before validation
  return DensityMatrix(std::move(out), tol::tp);
}

double output_purity(const Channel& phi, const PureState& psi) {
  const DensityMatrix out = apply(phi, projector(psi));
  return out.matrix().squaredNorm();  // tr(sigma^2) for Hermitian sigma
}

DensityMatrix partial_trace_b(const DensityMatrix& rho, const BipartiteShape& shape) {
  if (shape.dim_a < 1 || shape.dim_b < 1 || rho.dim() != shape.total()) {
    throw std::domain_error("partial_trace_b: state dimension does not factor as dim_a*dim_b");
  }
  const Eigen::Index da = shape.dim_a, db = shape.dim_b;
  Eigen::MatrixXcd red = Eigen::MatrixXcd::Zero(da, da);
  for (Eigen::Index a = 0; a < da; ++a) {
    for (Eigen::Index ap = 0; ap < da; ++ap) {
      std::complex<double> acc = 0.0;
      for (Eigen::Index b = 0; b < db; ++b) acc += rho.matrix()(a * db + b, ap * db + b);
      red(a, ap) = acc;
    }
  }
  return DensityMatrix(std::move(red));
}

int output_rank_estimate(const Channel& phi, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("output_rank_estimate: trials must be >= 1");
  const SeedSpec spec{seed, "output-rank-estimate"};
  int best = 0;
  for (int t = 0; t < trials; ++t) {
    const PureState psi = sample_haar_pure(static_cast<int>(phi.dim_in()), spec,
                                           static_cast<std::uint64_t>(t));
    const DensityMatrix out = apply(phi, projector(psi));
    best = std::max(best, out.spectrum().numerical_rank());
  }
  return best;
}

}  // namespace entrobound
