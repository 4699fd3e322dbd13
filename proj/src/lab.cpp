// Copyright The entrobound Authors
// SPDX-License-Identifier: Apache-2.0

#include "entrobound/lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "entrobound/kernels.hpp"

namespace entrobound {

namespace {

constexpr std::size_t kChunkRows = 4096;
constexpr std::size_t kMaxStoredFindings = 128;
constexpr int kMaxRedraws = 64;

// e_0..e_n of a raw coordinate vector by the characteristic-coefficient
// recurrence; all updates are nonnegative fused accumulations.
std::vector<double> esym_raw(const std::vector<double>& x) {
  std::vector<double> e(x.size() + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t k = std::min(e.size() - 1, i + 1); k >= 1; --k) {
      e[k] = std::fma(x[i], e[k - 1], e[k]);
    }
  }
  return e;
}

int raw_rank(const std::vector<double>& v) {
  double top = 0.0;
  for (const double x : v) top = std::max(top, x);
  if (top <= 0.0) return 0;
  int rank = 0;
  for (const double x : v) {
    if (x > tol::rank * top) ++rank;
  }
  return rank;
}

// Chunked sweep over `trials` rows.  fill(trial, row) writes the n spectrum
// entries and returns the numerical rank.  Rows are reduced through the
// active kernel backend; equality candidates are re-derived through
// inequality_gap so the sweep and the scalar path classify identically.
template <typename FillFn>
SweepReport run_sweep(int n, long long trials, LogBase base, std::uint64_t seed_echo,
                      FillFn&& fill) {
  if (n < 2) throw std::domain_error("sweep: dimension must be at least 2");
  if (trials < 1) throw std::domain_error("sweep: at least one trial required");

  SweepReport rep;
  rep.dimension = n;
  rep.trials = trials;
  rep.base = base;
  rep.seed = seed_echo;
  rep.min_gap = std::numeric_limits<double>::infinity();

  const auto& backend = kernels::active_backend();
  const double scale = log_scale(base);
  std::vector<double> c_by_rank(static_cast<std::size_t>(n) + 1);
  for (int r = 0; r <= n; ++r) {
    c_by_rank[static_cast<std::size_t>(r)] = c_constant(std::max(r, 2), base);
  }

  const std::size_t width = static_cast<std::size_t>(n);
  std::vector<double> panel(kChunkRows * width);
  std::vector<double> etas(kChunkRows * width);
  std::vector<double> s1s(kChunkRows);
  std::vector<double> e2s(kChunkRows);
  std::vector<int> ranks(kChunkRows);

  for (long long lo = 0; lo < trials; lo += static_cast<long long>(kChunkRows)) {
    const std::size_t rows =
        static_cast<std::size_t>(std::min<long long>(kChunkRows, trials - lo));
    for (std::size_t i = 0; i < rows; ++i) {
      ranks[i] = fill(static_cast<std::uint64_t>(lo) + i, panel.data() + i * width);
    }
    kernels::batch_s1_e2(panel.data(), rows, width, backend, etas.data(), s1s.data(),
                         e2s.data());
    for (std::size_t i = 0; i < rows; ++i) {
      const std::uint64_t trial = static_cast<std::uint64_t>(lo) + i;
      const double s1v = s1s[i] * scale;
      const double e2v = e2s[i];
      const double cn = c_by_rank[static_cast<std::size_t>(ranks[i])];
      const double gap = cn * std::sqrt(e2v) - s1v;
      if (gap < rep.min_gap) {
        rep.min_gap = gap;
        rep.min_gap_trial = trial;
      }
      if (gap < -tol::gap) ++rep.violations;
      // Cheap prefilter (2x headroom), authoritative classification below.
      const double eq_scale = cn * std::max({std::sqrt(e2v), s1v, 1.0});
      if (std::abs(gap) <= 2.0 * tol::eq * eq_scale) {
        const double* row = panel.data() + i * width;
        const GapReport g = inequality_gap(Spectrum(std::vector<double>(row, row + width)), base);
        if (g.classification != EqualityClass::strict) {
          ++rep.equality_count;
          if (rep.equality_hits.size() < kMaxStoredFindings) {
            rep.equality_hits.push_back({trial, g.classification, g.gap});
          }
        }
      }
    }
  }
  return rep;
}

// Flat-Dirichlet coordinates with numerical rank >= 2, redrawing (and
// counting) on the measure-zero failure.  Attempt a of trial t draws from
// stream index t*kMaxRedraws + a, so trials stay independent.
std::vector<double> draw_coords_rank2(int n, const SeedSpec& seed, const char* label,
                                      std::uint64_t trial, long long& resamples) {
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    TrialRng rng(SeedSpec{seed.master_seed, label},
                 trial * static_cast<std::uint64_t>(kMaxRedraws) + static_cast<std::uint64_t>(attempt));
    std::vector<double> v = detail::dirichlet_coords(n, rng);
    if (raw_rank(v) >= 2) return v;
    ++resamples;
  }
  throw std::domain_error("probe: could not draw a rank-2 spectrum");
}

DensityMatrix draw_density_rank2(int n, const SeedSpec& seed, const char* label,
                                 std::uint64_t trial, long long& resamples) {
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    DensityMatrix rho = sample_density(
        n, n, SeedSpec{seed.master_seed, label},
        trial * static_cast<std::uint64_t>(kMaxRedraws) + static_cast<std::uint64_t>(attempt));
    if (rho.spectrum().numerical_rank() >= 2) return rho;
    ++resamples;
  }
  throw std::domain_error("probe: could not draw a rank-2 density matrix");
}

std::vector<double> flatten_interleaved(const Eigen::MatrixXcd& m) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(2 * m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out.push_back(m(i, j).real());
      out.push_back(m(i, j).imag());
    }
  }
  return out;
}

void record_margin(ProbeReport& rep, std::uint64_t trial, double margin, ProbeFinding finding) {
  if (margin < rep.worst_margin) {
    rep.worst_margin = margin;
    rep.worst_trial = trial;
  }
  if (margin < -tol::probe) {
    ++rep.counterexample_count;
    if (rep.counterexamples.size() < kMaxStoredFindings) {
      rep.counterexamples.push_back(std::move(finding));
    }
  }
}

}  // namespace

SweepReport verify_theorem(int n, long long trials, SweepMeasure measure, const SeedSpec& seed,
                           LogBase base) {
  if (measure == SweepMeasure::simplex) {
    return run_sweep(n, trials, base, seed.master_seed, [&](std::uint64_t t, double* row) {
      const Spectrum s = sample_simplex(n, seed, t);
      std::copy(s.values().begin(), s.values().end(), row);
      return s.numerical_rank();
    });
  }
  return run_sweep(n, trials, base, seed.master_seed, [&](std::uint64_t t, double* row) {
    const DensityMatrix rho = sample_density(n, n, seed, t);
    const Spectrum& s = rho.spectrum();
    std::copy(s.values().begin(), s.values().end(), row);
    return s.numerical_rank();
  });
}

SweepReport sweep_spectra(const std::vector<Spectrum>& spectra, LogBase base,
                          std::uint64_t seed_echo) {
  if (spectra.empty()) throw std::domain_error("sweep_spectra: at least one spectrum required");
  const int n = static_cast<int>(spectra.front().size());
  for (const auto& s : spectra) {
    if (static_cast<int>(s.size()) != n) {
      throw std::domain_error("sweep_spectra: spectra must share one dimension");
    }
  }
  return run_sweep(n, static_cast<long long>(spectra.size()), base, seed_echo,
                   [&](std::uint64_t t, double* row) {
                     const Spectrum& s = spectra[static_cast<std::size_t>(t)];
                     std::copy(s.values().begin(), s.values().end(), row);
                     return s.numerical_rank();
                   });
}

ProbeReport probe_concavity(int n, long long trials, ProbeLevel level, const SeedSpec& seed,
                            LogBase base) {
  if (n < 2) throw std::domain_error("probe_concavity: dimension must be at least 2");
  if (trials < 1) throw std::domain_error("probe_concavity: at least one trial required");

  ProbeReport rep;
  rep.probe_kind = level == ProbeLevel::spectrum ? "concavity-spectrum" : "concavity-matrix";
  rep.dimension = n;
  rep.trials = trials;
  rep.base = base;
  rep.seed = seed.master_seed;
  rep.worst_margin = std::numeric_limits<double>::infinity();

  for (long long t = 0; t < trials; ++t) {
    const std::uint64_t trial = static_cast<std::uint64_t>(t);
    if (level == ProbeLevel::spectrum) {
      std::vector<double> a = draw_coords_rank2(n, seed, "concavity-a", trial, rep.resamples);
      std::vector<double> b = draw_coords_rank2(n, seed, "concavity-b", trial, rep.resamples);
      const double margin = detail::concavity_margin_spectrum(a, b, base);
      ProbeFinding finding;
      finding.trial = trial;
      finding.margin = margin;
      finding.a = std::move(a);
      finding.b = std::move(b);
      record_margin(rep, trial, margin, std::move(finding));
    } else {
      const DensityMatrix rho_a =
          draw_density_rank2(n, seed, "concavity-matrix-a", trial, rep.resamples);
      const DensityMatrix rho_b =
          draw_density_rank2(n, seed, "concavity-matrix-b", trial, rep.resamples);
      // One fresh eigensolve for the midpoint; the endpoints reuse their
      // construction-time spectra, matching the replay path bit for bit.
      const DensityMatrix mid(0.5 * (rho_a.matrix() + rho_b.matrix()));
      const double margin =
          ratio_f(mid.spectrum(), base) -
          0.5 * (ratio_f(rho_a.spectrum(), base) + ratio_f(rho_b.spectrum(), base));
      ProbeFinding finding;
      finding.trial = trial;
      finding.margin = margin;
      finding.matrix_a = flatten_interleaved(rho_a.matrix());
      finding.matrix_b = flatten_interleaved(rho_b.matrix());
      record_margin(rep, trial, margin, std::move(finding));
    }
  }
  return rep;
}

ProbeReport probe_ek_monotone(int n, long long trials, const SeedSpec& seed, LogBase base) {
  if (n < 2) throw std::domain_error("probe_ek_monotone: dimension must be at least 2");
  if (trials < 1) throw std::domain_error("probe_ek_monotone: at least one trial required");

  ProbeReport rep;
  rep.probe_kind = "ek-monotone";
  rep.dimension = n;
  rep.trials = trials;
  rep.base = base;
  rep.seed = seed.master_seed;
  rep.worst_margin = std::numeric_limits<double>::infinity();

  const double min_entry = 0.02 / n;
  const double min_gap = 0.01 / (static_cast<double>(n) * n);

  for (long long t = 0; t < trials; ++t) {
    const std::uint64_t trial = static_cast<std::uint64_t>(t);
    bool done = false;
    for (int attempt = 0; attempt < kMaxRedraws && !done; ++attempt) {
      TrialRng rng(SeedSpec{seed.master_seed, "ek-monotone"},
                   trial * static_cast<std::uint64_t>(kMaxRedraws) +
                       static_cast<std::uint64_t>(attempt));
      std::vector<double> v = detail::dirichlet_coords(n, rng);
      const Spectrum s{std::vector<double>(v)};
      // Interior, well-separated entries keep the Jacobian far from
      // singular and the perturbed point inside the cone.
      bool interior = s[s.size() - 1] >= min_entry;
      for (std::size_t i = 0; interior && i + 1 < s.size(); ++i) {
        interior = s[i] - s[i + 1] >= min_gap;
      }
      if (!interior) {
        ++rep.resamples;
        continue;
      }
      std::vector<double> derivs;
      derivs.reserve(static_cast<std::size_t>(n) - 1);
      bool ok = true;
      for (int k = 2; k <= n && ok; ++k) {
        try {
          derivs.push_back(ek_directional_derivative(s, k, base));
        } catch (const std::domain_error&) {
          ok = false;
        }
      }
      if (!ok) {
        ++rep.resamples;
        continue;
      }
      for (int k = 2; k <= n; ++k) {
        const double margin = derivs[static_cast<std::size_t>(k) - 2];
        ProbeFinding finding;
        finding.trial = trial;
        finding.k = k;
        finding.margin = margin;
        finding.a = s.values();
        record_margin(rep, trial, margin, std::move(finding));
      }
      done = true;
    }
    if (!done) throw std::domain_error("probe_ek_monotone: could not draw an interior spectrum");
  }
  return rep;
}

double ek_directional_derivative(const Spectrum& s, int k, LogBase base) {
  const int n = static_cast<int>(s.size());
  if (n < 2) throw std::domain_error("ek_directional_derivative: need dimension >= 2");
  if (k < 2 || k > n) throw std::domain_error("ek_directional_derivative: k out of range");
  if (s.numerical_rank() < n) {
    throw std::domain_error("ek_directional_derivative: interior spectrum required");
  }
  const std::vector<double>& x = s.values();

  // Jacobian of (e_2..e_n) in (x_1..x_{n-1}) with x_0 absorbing the e_1
  // constraint: d e_{r+2} / d x_c = e_{r+1}(x w/o c) - e_{r+1}(x w/o 0).
  const int m = n - 1;
  auto esym_without = [&](int skip) {
    std::vector<double> red;
    red.reserve(static_cast<std::size_t>(n) - 1);
    for (int i = 0; i < n; ++i) {
      if (i != skip) red.push_back(x[static_cast<std::size_t>(i)]);
    }
    return esym_raw(red);
  };
  const std::vector<double> e_wo0 = esym_without(0);
  Eigen::MatrixXd jac(m, m);
  for (int c = 0; c < m; ++c) {
    const std::vector<double> e_woc = esym_without(c + 1);
    for (int r = 0; r < m; ++r) {
      jac(r, c) = e_woc[static_cast<std::size_t>(r) + 1] - e_wo0[static_cast<std::size_t>(r) + 1];
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
  if (!lu.isInvertible()) {
    throw std::domain_error("ek_directional_derivative: singular Jacobian");
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  rhs[k - 2] = 1.0;
  const Eigen::VectorXd sol = lu.solve(rhs);

  std::vector<double> dir(static_cast<std::size_t>(n));
  dir[0] = -sol.sum();
  for (int c = 0; c < m; ++c) dir[static_cast<std::size_t>(c) + 1] = sol[c];

  // Nominal step: 1e-5 relative to the target e_k.  The direction blows up
  // as entries approach each other (the map x -> (e_2..e_n) loses rank at
  // coordinate collisions), and a step sized in e_k units alone can then
  // displace coordinates across a collision, where the secant is
  // meaningless.  Cap the largest coordinate displacement at 1e-3 of the
  // smallest entry and smallest neighbor gap; if even that leaves too
  // little room for a reliable secant, the spectrum counts as
  // near-degenerate, like a singular Jacobian.
  double dir_max = 0.0;
  for (const double d : dir) dir_max = std::max(dir_max, std::fabs(d));
  double safe = x.back();
  for (std::size_t i = 0; i + 1 < x.size(); ++i) safe = std::min(safe, x[i] - x[i + 1]);
  const double ek = esym_raw(x)[static_cast<std::size_t>(k)];
  const double h = std::min(1e-5 * ek, 1e-3 * safe / dir_max);
  if (h < 1e-11) {
    throw std::domain_error("ek_directional_derivative: entries too close for a reliable step");
  }
  const double s0 = s1(s, base);
  auto entropy_at = [&](double step) {
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < xs.size(); ++i) {
      xs[i] = x[i] + step * dir[i];
      if (xs[i] <= 0.0) {
        throw std::domain_error("ek_directional_derivative: step leaves the positive cone");
      }
    }
    return s1(Spectrum(std::move(xs)), base);
  };
  const double d_full = (entropy_at(h) - s0) / h;
  const double d_half = (entropy_at(0.5 * h) - s0) / (0.5 * h);
  return 2.0 * d_half - d_full;  // first-order Richardson refinement
}

std::vector<Fig1Row> fig1_data(int resolution, LogBase base) {
  if (resolution < 2) throw std::domain_error("fig1_data: resolution must be at least 2");
  const double two_log2 = 2.0 * std::log(2.0) * log_scale(base);
  std::vector<Fig1Row> rows;
  rows.reserve(static_cast<std::size_t>(resolution) + 1);
  for (int i = 0; i <= resolution; ++i) {
    const double x = static_cast<double>(i) / resolution;
    Fig1Row row;
    row.x = x;
    row.entropy = eta(x, base) + eta(1.0 - x, base);
    row.bound = two_log2 * std::sqrt(x * (1.0 - x));
    rows.push_back(row);
  }
  return rows;
}

std::vector<Fig2Row> fig2_data(int resolution, LogBase base) {
  if (resolution < 2) throw std::domain_error("fig2_data: resolution must be at least 2");
  std::vector<Fig2Row> rows;
  rows.reserve((static_cast<std::size_t>(resolution) + 1) *
                   (static_cast<std::size_t>(resolution) + 2) / 2 +
               1);
  auto diff_at = [&](double x, double y) {
    const Spectrum s{std::vector<double>{x, y, 1.0 - x - y}};
    return inequality_gap(s, base, 3).gap;
  };
  for (int i = 0; i <= resolution; ++i) {
    for (int j = 0; i + j <= resolution; ++j) {
      const double x = static_cast<double>(i) / resolution;
      const double y = static_cast<double>(j) / resolution;
      rows.push_back({x, y, diff_at(x, y)});
    }
  }
  if (resolution % 3 != 0) {
    const double third = 1.0 / 3.0;
    rows.push_back({third, third, diff_at(third, third)});
  }
  return rows;
}

namespace detail {

double concavity_margin_spectrum(const std::vector<double>& a, const std::vector<double>& b,
                                 LogBase base) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("concavity_margin_spectrum: size mismatch");
  }
  std::vector<double> mid(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) mid[i] = 0.5 * (a[i] + b[i]);
  const double fa = ratio_f(Spectrum(std::vector<double>(a)), base);
  const double fb = ratio_f(Spectrum(std::vector<double>(b)), base);
  const double fm = ratio_f(Spectrum(std::move(mid)), base);
  return fm - 0.5 * (fa + fb);
}

double concavity_margin_matrix(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                               LogBase base) {
  const DensityMatrix da(a);
  const DensityMatrix db(b);
  const DensityMatrix mid(0.5 * (a + b));
  return ratio_f(mid.spectrum(), base) -
         0.5 * (ratio_f(da.spectrum(), base) + ratio_f(db.spectrum(), base));
}

}  // namespace detail

}  // namespace entrobound
