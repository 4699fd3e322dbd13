// Copyright The entrobound Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "entrobound/roofs.hpp"
#include "entrobound/sampling.hpp"
#include "oracles.hpp"

using namespace entrobound;

namespace {

DensityMatrix bell_state() {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
  return DensityMatrix(std::move(m));
}

// 1/2 |00><00| + 1/2 |11><11|: classically correlated, zero entanglement.
DensityMatrix classical_mixture() {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m(0, 0) = m(3, 3) = 0.5;
  return DensityMatrix(std::move(m));
}

Channel identity_channel(Eigen::Index d) {
  return Channel(d, d, {Eigen::MatrixXcd::Identity(d, d)});
}

Channel depolarizing_qubit() {
  const std::complex<double> i(0.0, 1.0);
  Eigen::MatrixXcd x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, -i, i, 0;
  z << 1, 0, 0, -1;
  return Channel(2, 2,
                 {0.5 * Eigen::MatrixXcd::Identity(2, 2), 0.5 * x, 0.5 * y, 0.5 * z});
}

RoofConfig quick_config(std::uint64_t seed) {
  RoofConfig cfg;
  cfg.restarts = 2;
  cfg.max_iters = 400;
  cfg.seed = seed;
  cfg.rank_trials = 8;
  return cfg;
}

bool audit_clean(const RoofAudit& a) {
  return a.worst_termwise_excess <= tol::probe && a.worst_holevo_defect <= tol::probe &&
         a.max_best_increase <= tol::probe;
}

}  // namespace

TEST_CASE("cleaned functionals drop rounding-scale eigenvalues") {
  const roofs_detail::CleanFunctionals f =
      roofs_detail::cleaned_functionals(Spectrum(std::vector<double>{0.5, 0.5, 1e-13}));
  CHECK(f.rank == 2);
  CHECK(f.s1_natural == doctest::Approx(std::log(2.0)).epsilon(1e-13));
  CHECK(f.e2 == doctest::Approx(0.25).epsilon(1e-13));

  SUBCASE("pure spectra have zero entropy and zero e2") {
    const auto g = roofs_detail::cleaned_functionals(Spectrum(std::vector<double>{1.0, 0.0}));
    CHECK(g.rank == 1);
    CHECK(g.s1_natural == 0.0);
    CHECK(g.e2 == 0.0);
  }
  SUBCASE("the matrix overload agrees with the spectrum one") {
    const DensityMatrix rho = sample_density(3, 2, SeedSpec{3, "cleaned"}, 0);
    const auto via_matrix = roofs_detail::cleaned_functionals(rho.matrix());
    const auto via_spectrum = roofs_detail::cleaned_functionals(rho.spectrum());
    CHECK(via_matrix.rank == via_spectrum.rank);
    CHECK(via_matrix.s1_natural == doctest::Approx(via_spectrum.s1_natural).epsilon(1e-10));
    CHECK(via_matrix.e2 == doctest::Approx(via_spectrum.e2).epsilon(1e-10));
  }
  SUBCASE("unnormalized input scales as the homogeneous extensions") {
    // s1(p*sigma) = p*s1(sigma) and sqrt(e2(p*sigma)) = p*sqrt(e2(sigma)).
    const double p = 0.37;
    const auto unit = roofs_detail::cleaned_functionals(
        Spectrum(std::vector<double>{0.6, 0.4}));
    const auto scaled = roofs_detail::cleaned_functionals(
        Spectrum(std::vector<double>{0.6 * p, 0.4 * p}));
    CHECK(scaled.s1_natural == doctest::Approx(p * unit.s1_natural).epsilon(1e-12));
    CHECK(std::sqrt(scaled.e2) == doctest::Approx(p * std::sqrt(unit.e2)).epsilon(1e-12));
  }
}

TEST_CASE("ensemble validation") {
  const DensityMatrix rho = bell_state();
  Eigen::VectorXcd bell_vec = Eigen::VectorXcd::Zero(4);
  bell_vec[0] = bell_vec[3] = 1.0 / std::sqrt(2.0);

  SUBCASE("a correct single-member decomposition is accepted") {
    const Ensemble ens({EnsembleMember{1.0, PureState(bell_vec)}}, rho);
    CHECK(ens.members().size() == 1);
    CHECK(ens.dim() == 4);
  }
  SUBCASE("weights must be positive and sum to one") {
    CHECK_THROWS_AS(Ensemble({EnsembleMember{0.5, PureState(bell_vec)}}, rho),
                    std::domain_error);
    CHECK_THROWS_AS(Ensemble({EnsembleMember{1.0, PureState(bell_vec)},
                              EnsembleMember{-0.0, PureState(bell_vec)}},
                             rho),
                    std::domain_error);
  }
  SUBCASE("recombination must reproduce the target") {
    Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(4);
    e0[0] = 1.0;
    CHECK_THROWS_AS(Ensemble({EnsembleMember{1.0, PureState(e0)}}, rho), std::domain_error);
  }
  SUBCASE("members must live in the target dimension") {
    Eigen::VectorXcd small = Eigen::VectorXcd::Zero(2);
    small[0] = 1.0;
    CHECK_THROWS_AS(Ensemble({EnsembleMember{1.0, PureState(small)}}, rho),
                    std::domain_error);
  }
  SUBCASE("an ensemble needs members") {
    CHECK_THROWS_AS(Ensemble({}, rho), std::invalid_argument);
  }
}

TEST_CASE("isometry decompositions recombine to the state") {
  const SeedSpec seed{47, "roof-decomp"};
  const DensityMatrix rho = sample_density(4, 3, seed, 0);
  const int r = rho.spectrum().numerical_rank();
  REQUIRE(r == 3);

  SUBCASE("identity parameters give the eigendecomposition") {
    const Ensemble ens = decompose_via_isometry(rho, r, std::vector<double>(9, 0.0));
    REQUIRE(static_cast<int>(ens.members().size()) == r);
    // Member weights are the nonzero eigenvalues, in order.
    for (int j = 0; j < r; ++j) {
      CHECK(ens.members()[static_cast<std::size_t>(j)].weight ==
            doctest::Approx(rho.spectrum()[static_cast<std::size_t>(j)]).epsilon(1e-10));
    }
  }
  SUBCASE("random generator coordinates still recombine") {
    TrialRng rng(seed, 77);
    for (int m : {3, 4, 5}) {
      std::vector<double> params(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
      for (double& p : params) p = rng.normal();
      const Ensemble ens = decompose_via_isometry(rho, m, params);
      CHECK(static_cast<int>(ens.members().size()) <= m);
      double wsum = 0.0;
      for (const auto& mem : ens.members()) wsum += mem.weight;
      CHECK(wsum == doctest::Approx(1.0).epsilon(1e-10));
      // The Ensemble constructor has already verified recombination; check
      // again from scratch so the test does not lean on that validation.
      Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(4, 4);
      for (const auto& mem : ens.members()) {
        acc += mem.weight * (mem.state.amplitudes() * mem.state.amplitudes().adjoint());
      }
      CHECK((acc - rho.matrix()).cwiseAbs().maxCoeff() <= 1e-9);
    }
  }
  SUBCASE("too few members or malformed parameters are rejected") {
    CHECK_THROWS_AS(decompose_via_isometry(rho, r - 1,
                                           std::vector<double>(static_cast<std::size_t>((r - 1) * (r - 1)), 0.0)),
                    std::domain_error);
    CHECK_THROWS_AS(decompose_via_isometry(rho, r, std::vector<double>(5, 0.0)),
                    std::invalid_argument);
  }
}

TEST_CASE("roof objectives on hand-built ensembles") {
  const DensityMatrix rho = bell_state();
  Eigen::VectorXcd bell_vec = Eigen::VectorXcd::Zero(4);
  bell_vec[0] = bell_vec[3] = 1.0 / std::sqrt(2.0);
  const Ensemble ens({EnsembleMember{1.0, PureState(bell_vec)}}, rho);
  const BipartiteShape shape{2, 2};

  CHECK(roof_objective_ef(ens, shape) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(roof_objective_ef(ens, shape, LogBase::base2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(roof_objective_concurrence(ens, shape) == doctest::Approx(1.0).epsilon(1e-12));

  SUBCASE("every random ensemble satisfies the termwise coefficient bound") {
    const SeedSpec seed{53, "roof-termwise"};
    const DensityMatrix mixed = sample_density(4, 2, seed, 1);
    TrialRng rng(seed, 2);
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<double> params(4);
      for (double& p : params) p = rng.normal();
      const Ensemble e = decompose_via_isometry(mixed, 2, params);
      const double ef = roof_objective_ef(e, shape);
      const double conc = roof_objective_concurrence(e, shape);
      // Reduced states of 2x2-shaped members have rank at most 2.
      const double coeff = ef_bound_from_concurrence(1.0, 2);
      CHECK(ef <= coeff * conc + 1e-9);
    }
  }
}

TEST_CASE("concurrence-to-EF coefficient") {
  CHECK(ef_bound_from_concurrence(0.5, 3) == doctest::Approx(0.475713075448173).epsilon(1e-12));
  CHECK(ef_bound_from_concurrence(1.0, 2) == doctest::Approx(std::log(2.0)).epsilon(1e-13));
  CHECK(ef_bound_from_concurrence(1.0, 2, LogBase::base2) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(ef_bound_from_concurrence(0.0, 5) == 0.0);
  CHECK_THROWS_AS(ef_bound_from_concurrence(-0.1, 3), std::domain_error);
  CHECK_THROWS_AS(ef_bound_from_concurrence(0.5, 1), std::domain_error);
}

TEST_CASE("roof minimization on states with known values") {
  const BipartiteShape shape{2, 2};

  SUBCASE("bell state: EF = log 2, concurrence = 1, coefficient bound saturated") {
    const BoundReport ef = minimize_roof(bell_state(), shape, RoofObjective::ef, quick_config(5));
    CHECK(ef.kind == "ef");
    CHECK(ef.bound_value == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    CHECK(ef.n_used == 2);
    CHECK(ef.converged);
    CHECK(audit_clean(ef.audit));
    REQUIRE(ef.certificate_ensemble.has_value());
    CHECK(ef.certificate_ensemble->members().size() == 1);
    REQUIRE(ef.eigen_ensemble_value.has_value());
    CHECK(ef.bound_value <= *ef.eigen_ensemble_value + 1e-12);

    const BoundReport conc =
        minimize_roof(bell_state(), shape, RoofObjective::concurrence, quick_config(5));
    CHECK(conc.kind == "concurrence");
    CHECK(conc.bound_value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(ef_bound_from_concurrence(conc.bound_value, ef.n_used) ==
          doctest::Approx(ef.bound_value).epsilon(1e-9));
  }
  SUBCASE("classically correlated mixtures carry no entanglement") {
    const BoundReport ef =
        minimize_roof(classical_mixture(), shape, RoofObjective::ef, quick_config(6));
    CHECK(std::abs(ef.bound_value) <= 1e-9);
    const BoundReport conc =
        minimize_roof(classical_mixture(), shape, RoofObjective::concurrence, quick_config(6));
    CHECK(std::abs(conc.bound_value) <= 1e-9);
    CHECK(audit_clean(ef.audit));
  }
  SUBCASE("product pure states have zero roof in any base") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(1, 1) = 1.0;  // |0>|1>
    const BoundReport ef = minimize_roof(DensityMatrix(std::move(m)), shape, RoofObjective::ef,
                                         quick_config(7), LogBase::base2);
    CHECK(std::abs(ef.bound_value) <= 1e-9);
    CHECK(ef.base == LogBase::base2);
  }
  SUBCASE("optimizer never exceeds the eigendecomposition start, audit stays clean") {
    const SeedSpec seed{61, "roof-random"};
    for (std::uint64_t t = 0; t < 3; ++t) {
      const DensityMatrix rho = sample_density(4, 2, seed, t);
      const BoundReport rep = minimize_roof(rho, shape, RoofObjective::ef, quick_config(t));
      REQUIRE(rep.eigen_ensemble_value.has_value());
      CHECK(rep.bound_value <= *rep.eigen_ensemble_value + 1e-12);
      CHECK(audit_clean(rep.audit));
      CHECK(rep.audit.ensembles_evaluated > 0);
      CHECK(rep.audit.max_recombination_defect <= tol::ensemble);
    }
  }
  SUBCASE("shape and ensemble-size validation") {
    CHECK_THROWS_AS(minimize_roof(bell_state(), BipartiteShape{3, 2}, RoofObjective::ef,
                                  quick_config(1)),
                    std::domain_error);
    RoofConfig cfg = quick_config(1);
    cfg.ensemble_size = 1;
    const DensityMatrix rank2 = classical_mixture();
    CHECK_THROWS_AS(minimize_roof(rank2, shape, RoofObjective::ef, cfg), std::domain_error);
  }
}

TEST_CASE("minimum output entropy bound") {
  SUBCASE("identity channel: exactly zero") {
    const BoundReport rep = min_output_entropy_bound(identity_channel(2), quick_config(11));
    CHECK(rep.kind == "min-output-entropy");
    CHECK(std::abs(rep.bound_value) <= 1e-9);
    REQUIRE(rep.direct_estimate.has_value());
    CHECK(std::abs(*rep.direct_estimate) <= 1e-9);
    REQUIRE(rep.best_purity.has_value());
    CHECK(*rep.best_purity == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep.n_used == 1);
    REQUIRE(rep.certificate_state.has_value());
    CHECK(rep.certificate_state->dim() == 2);
  }
  SUBCASE("fully depolarizing qubit: bound log 2, equal to the direct value") {
    const BoundReport rep = min_output_entropy_bound(depolarizing_qubit(), quick_config(12));
    CHECK(rep.bound_value == doctest::Approx(std::log(2.0)).epsilon(1e-6));
    REQUIRE(rep.direct_estimate.has_value());
    CHECK(rep.bound_value == doctest::Approx(*rep.direct_estimate).epsilon(1e-6));
    CHECK(rep.n_used == 2);
    CHECK(*rep.best_purity == doctest::Approx(0.5).epsilon(1e-9));

    const BoundReport b2 =
        min_output_entropy_bound(depolarizing_qubit(), quick_config(12), LogBase::base2);
    CHECK(b2.bound_value == doctest::Approx(1.0).epsilon(1e-6));
  }
  SUBCASE("an explicit n overrides the sampled estimate") {
    const BoundReport rep =
        min_output_entropy_bound(identity_channel(2), quick_config(13), LogBase::natural, 2);
    CHECK(rep.n_used == 2);
    CHECK(std::abs(rep.bound_value) <= 1e-9);  // pure output: e2 = 0 either way
  }
}

TEST_CASE("holevo lower bound") {
  Eigen::MatrixXcd half = 0.5 * Eigen::MatrixXcd::Identity(2, 2);
  const DensityMatrix mixed(half);

  SUBCASE("fully depolarizing qubit at I/2: chi and bound both vanish") {
    const BoundReport rep =
        holevo_lower_bound(depolarizing_qubit(), mixed, quick_config(21));
    CHECK(rep.kind == "holevo");
    CHECK(std::abs(rep.bound_value) <= 1e-6);
    REQUIRE(rep.chi_estimate.has_value());
    CHECK(std::abs(*rep.chi_estimate) <= 1e-6);
    REQUIRE(rep.output_entropy.has_value());
    CHECK(*rep.output_entropy == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    REQUIRE(rep.c_phi_estimate.has_value());
    CHECK(*rep.c_phi_estimate == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(rep.chi_estimate >= rep.bound_value - 1e-9);
    CHECK(audit_clean(rep.audit));
  }
  SUBCASE("identity channel at I/2: pure decompositions give chi = log 2") {
    const BoundReport rep = holevo_lower_bound(identity_channel(2), mixed, quick_config(22));
    CHECK(*rep.chi_estimate == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    CHECK(std::abs(*rep.c_phi_estimate) <= 1e-9);
    CHECK(rep.bound_value == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    CHECK(audit_clean(rep.audit));
  }
  SUBCASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(holevo_lower_bound(identity_channel(3), mixed, quick_config(23)),
                    std::domain_error);
  }
  SUBCASE("chi never drops below the bound on sampled channels") {
    const SeedSpec seed{67, "holevo-random"};
    for (std::uint64_t t = 0; t < 3; ++t) {
      const Channel phi = sample_channel(2, 2, 2, seed, t);
      const DensityMatrix rho = sample_density(2, 2, seed, 100 + t);
      const BoundReport rep = holevo_lower_bound(phi, rho, quick_config(t));
      CHECK(*rep.chi_estimate >= rep.bound_value - 1e-9);
      CHECK(audit_clean(rep.audit));
      CHECK(rep.audit.worst_holevo_defect <= tol::probe);
    }
  }
}
