// Copyright The entrobound Authors
// SPDX-License-Identifier: Apache-2.0

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "entrobound/lab.hpp"
#include "entrobound/sampling.hpp"
#include "entrobound/spectra.hpp"
#include "oracles.hpp"

using namespace entrobound;

namespace {

// Independent route to dS/de_k: build the full n x n Jacobian of
// (e_1, e_2, ..., e_n) in the coordinates via subset-sum enumeration, solve
// for the direction moving e_k alone, and contract with the analytic
// entropy gradient.  Shares no code with the library's reduced-system path.
double ek_derivative_oracle(const Spectrum& s, int k) {
  const int n = static_cast<int>(s.size());
  const std::vector<double>& x = s.values();
  Eigen::MatrixXd jac(n, n);
  for (int c = 0; c < n; ++c) {
    std::vector<double> rest;
    for (int i = 0; i < n; ++i) {
      if (i != c) rest.push_back(x[static_cast<std::size_t>(i)]);
    }
    jac(0, c) = 1.0;  // d e_1 / d x_c
    for (int r = 1; r < n; ++r) {
      jac(r, c) = oracles::esym_subset_sum(rest, r);  // d e_{r+1} = e_r of the rest
    }
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs[k - 1] = 1.0;
  const Eigen::VectorXd dir = jac.fullPivLu().solve(rhs);
  const std::vector<double> gs = grad_s1(s);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += gs[static_cast<std::size_t>(i)] * dir[i];
  return acc;
}

}  // namespace

TEST_CASE("verification sweeps find no violations and echo their setup") {
  const SeedSpec seed{2024, "lab-sweeps"};

  SUBCASE("simplex measure") {
    const SweepReport rep = verify_theorem(3, 3000, SweepMeasure::simplex, seed);
    CHECK(rep.dimension == 3);
    CHECK(rep.trials == 3000);
    CHECK(rep.violations == 0);
    CHECK(rep.min_gap >= -tol::gap);
    CHECK(rep.min_gap > 0.0);  // equality is measure-zero under the flat draw
    CHECK(rep.min_gap_trial < 3000);
    CHECK(rep.seed == 2024);
    CHECK(rep.base == LogBase::natural);
    CHECK(static_cast<long long>(rep.equality_hits.size()) <= rep.equality_count);
  }
  SUBCASE("matrix measure") {
    const SweepReport rep = verify_theorem(2, 1500, SweepMeasure::matrix, seed, LogBase::base2);
    CHECK(rep.violations == 0);
    CHECK(rep.min_gap >= -tol::gap);
    CHECK(rep.base == LogBase::base2);
  }
  SUBCASE("reports are deterministic in the seed") {
    const SweepReport a = verify_theorem(4, 500, SweepMeasure::simplex, seed);
    const SweepReport b = verify_theorem(4, 500, SweepMeasure::simplex, seed);
    CHECK(a.min_gap == b.min_gap);
    CHECK(a.min_gap_trial == b.min_gap_trial);
    const SweepReport c = verify_theorem(4, 500, SweepMeasure::simplex, SeedSpec{2025, "x"});
    CHECK(a.min_gap != c.min_gap);  // different master seed, different draws
  }
  SUBCASE("dimension must be at least 2") {
    CHECK_THROWS_AS(verify_theorem(1, 10, SweepMeasure::simplex, seed), std::domain_error);
  }
}

TEST_CASE("injected spectra classify their equality cases") {
  std::vector<Spectrum> spectra;
  spectra.emplace_back(std::vector<double>{1.0, 0.0, 0.0});              // rank-one equality
  spectra.emplace_back(std::vector<double>{0.5, 0.3, 0.2});              // strictly inside
  spectra.emplace_back(std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3});  // uniform equality

  const SweepReport rep = sweep_spectra(spectra, LogBase::natural, 99);
  CHECK(rep.dimension == 3);
  CHECK(rep.trials == 3);
  CHECK(rep.violations == 0);
  CHECK(rep.seed == 99);
  CHECK(rep.equality_count == 2);
  REQUIRE(rep.equality_hits.size() == 2);
  CHECK(rep.equality_hits[0].trial == 0);
  CHECK(rep.equality_hits[0].classification == EqualityClass::rank_one);
  CHECK(rep.equality_hits[1].trial == 2);
  CHECK(rep.equality_hits[1].classification == EqualityClass::uniform);
  CHECK(std::abs(rep.equality_hits[0].gap) <= 1e-10);
  CHECK(std::abs(rep.equality_hits[1].gap) <= 1e-10);
  CHECK(rep.min_gap >= -tol::gap);

  SUBCASE("mixed dimensions are rejected") {
    spectra.emplace_back(std::vector<double>{0.5, 0.5});
    CHECK_THROWS_AS(sweep_spectra(spectra), std::domain_error);
  }
  SUBCASE("empty input is rejected") {
    CHECK_THROWS_AS(sweep_spectra(std::vector<Spectrum>{}), std::domain_error);
  }
}

TEST_CASE("midpoint concavity probes") {
  const SeedSpec seed{515, "lab-concavity"};

  SUBCASE("spectrum level finds no counterexamples") {
    const ProbeReport rep = probe_concavity(3, 3000, ProbeLevel::spectrum, seed);
    CHECK(rep.probe_kind == "concavity-spectrum");
    CHECK(rep.dimension == 3);
    CHECK(rep.trials == 3000);
    CHECK(rep.counterexample_count == 0);
    CHECK(rep.counterexamples.empty());
    CHECK(rep.worst_margin >= -tol::probe);
    CHECK(rep.seed == 515);
  }
  SUBCASE("matrix level finds no counterexamples") {
    const ProbeReport rep = probe_concavity(2, 1500, ProbeLevel::matrix, seed);
    CHECK(rep.probe_kind == "concavity-matrix");
    CHECK(rep.counterexample_count == 0);
    CHECK(rep.worst_margin >= -tol::probe);
  }
  SUBCASE("deterministic in the seed") {
    const ProbeReport a = probe_concavity(4, 500, ProbeLevel::spectrum, seed);
    const ProbeReport b = probe_concavity(4, 500, ProbeLevel::spectrum, seed);
    CHECK(a.worst_margin == b.worst_margin);
    CHECK(a.worst_trial == b.worst_trial);
    CHECK(a.resamples == b.resamples);
  }
  SUBCASE("margin kernels replay explicit instances") {
    const std::vector<double> a{0.6, 0.3, 0.1};
    const std::vector<double> b{0.2, 0.5, 0.3};
    // Coordinate-wise midpoint of the raw (unsorted) vectors.
    const double direct = ratio_f(Spectrum(std::vector<double>{0.4, 0.4, 0.2})) -
                          0.5 * (ratio_f(Spectrum(std::vector<double>(a))) +
                                 ratio_f(Spectrum(std::vector<double>(b))));
    CHECK(detail::concavity_margin_spectrum(a, b) ==
          doctest::Approx(direct).epsilon(1e-12));
    CHECK(detail::concavity_margin_spectrum(b, a) ==
          doctest::Approx(detail::concavity_margin_spectrum(a, b)).epsilon(1e-13));
    CHECK_THROWS_AS(detail::concavity_margin_spectrum(a, std::vector<double>{0.5, 0.5}),
                    std::invalid_argument);

    const SeedSpec seed2{717, "margin-matrix"};
    const DensityMatrix da = sample_density(2, 2, seed2, 0);
    const DensityMatrix db = sample_density(2, 2, seed2, 1);
    const DensityMatrix mid(0.5 * (da.matrix() + db.matrix()));
    const double want = ratio_f(mid.spectrum()) -
                        0.5 * (ratio_f(da.spectrum()) + ratio_f(db.spectrum()));
    CHECK(detail::concavity_margin_matrix(da.matrix(), db.matrix()) ==
          doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("directional e_k monotonicity probe") {
  const SeedSpec seed{616, "lab-ek"};
  for (int n : {2, 3}) {
    const ProbeReport rep = probe_ek_monotone(n, n == 2 ? 2000 : 800, seed);
    CAPTURE(n);
    CHECK(rep.probe_kind == "ek-monotone");
    CHECK(rep.dimension == n);
    CHECK(rep.counterexample_count == 0);
    CHECK(rep.worst_margin >= -tol::probe);
    CHECK(rep.worst_margin > 0.0);  // the monotonicity claim predicts strictly positive
  }
}

TEST_CASE("directional derivative of the entropy in e_k") {
  SUBCASE("closed form at n = 2") {
    // At e2 = 0.2 the spectrum is ((1+r)/2, (1-r)/2) with r = sqrt(1-4*e2)
    // and dS/de2 = log(x+/x-)/r.
    const Spectrum s(std::vector<double>{0.7236067977499789, 0.27639320225002106});
    const double got = ek_directional_derivative(s, 2);
    CHECK(got == doctest::Approx(2.15204470482002).epsilon(1e-6));
  }
  SUBCASE("matches the full-Jacobian oracle for distinct interior spectra") {
    const Spectrum s(std::vector<double>{0.4, 0.3, 0.2, 0.1});
    for (int k = 2; k <= 4; ++k) {
      CAPTURE(k);
      const double got = ek_directional_derivative(s, k);
      const double want = ek_derivative_oracle(s, k);
      CHECK(oracles::close(got, want, 1e-4, 1e-8));
      CHECK(got > 0.0);
    }
  }
  SUBCASE("domain validation") {
    const Spectrum s(std::vector<double>{0.6, 0.4});
    CHECK_THROWS_AS(ek_directional_derivative(s, 1), std::domain_error);
    CHECK_THROWS_AS(ek_directional_derivative(s, 3), std::domain_error);
    CHECK_THROWS_AS(ek_directional_derivative(Spectrum(std::vector<double>{1.0, 0.0}), 2),
                    std::domain_error);
    // Two equal free coordinates make the constrained Jacobian singular.
    CHECK_THROWS_AS(ek_directional_derivative(Spectrum(std::vector<double>{0.4, 0.3, 0.3}), 2),
                    std::domain_error);
  }
}

TEST_CASE("binary entropy figure data") {
  const std::vector<Fig1Row> rows = fig1_data(10);
  REQUIRE(rows.size() == 11);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].x == doctest::Approx(static_cast<double>(i) / 10.0).epsilon(1e-15));
    CHECK(rows[i].bound - rows[i].entropy >= 0.0);
  }
  // Equality exactly at the endpoints and the midpoint, strict elsewhere.
  CHECK(rows[0].bound - rows[0].entropy == 0.0);
  CHECK(rows[5].bound - rows[5].entropy == 0.0);
  CHECK(rows[10].bound - rows[10].entropy == 0.0);
  CHECK(rows[3].bound - rows[3].entropy > 1e-3);

  SUBCASE("base 2 normalizes the peak to one") {
    const std::vector<Fig1Row> b2 = fig1_data(4, LogBase::base2);
    CHECK(b2[2].entropy == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(b2[2].bound == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("resolution validation") {
    CHECK_THROWS_AS(fig1_data(1), std::domain_error);
  }
}

TEST_CASE("ternary gap figure data") {
  SUBCASE("grid size when the center is a grid point") {
    const std::vector<Fig2Row> rows = fig2_data(6);
    CHECK(rows.size() == 28);  // (7*8)/2, no appended center
  }
  SUBCASE("grid size and appended center otherwise") {
    const std::vector<Fig2Row> rows = fig2_data(7);
    REQUIRE(rows.size() == 37);  // (8*9)/2 + center
    CHECK(rows.back().x == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(rows.back().y == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(std::abs(rows.back().diff) <= 1e-9);
  }
  SUBCASE("values: non-negative, vanishing corners, known edge value") {
    const std::vector<Fig2Row> rows = fig2_data(20);
    double max_diff = -1.0;
    std::size_t argmax = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(rows[i].diff >= -tol::gap);
      if (rows[i].diff > max_diff) {
        max_diff = rows[i].diff;
        argmax = i;
      }
      const double z = 1.0 - rows[i].x - rows[i].y;
      if ((rows[i].x == 0.0 && rows[i].y == 0.0) || (rows[i].x == 1.0) || (rows[i].y == 1.0)) {
        CHECK(std::abs(rows[i].diff) <= 1e-12);  // corners
      }
      (void)z;
    }
    // The maximum sits on a boundary edge of the simplex.
    const double zmax = 1.0 - rows[argmax].x - rows[argmax].y;
    const double min_coord = std::min({rows[argmax].x, rows[argmax].y, std::abs(zmax)});
    CHECK(min_coord <= 1.0 / 20.0);
    // Frozen spot value at (1/2, 1/2, 0): c_3/2 - log 2.
    bool found = false;
    for (const Fig2Row& r : rows) {
      if (r.x == 0.5 && r.y == 0.5) {
        CHECK(r.diff == doctest::Approx(0.2582789703364007).epsilon(1e-12));
        found = true;
      }
    }
    CHECK(found);
  }
}
