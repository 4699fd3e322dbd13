// Copyright The entrobound Authors
// SPDX-License-Identifier: Apache-2.0

#include "entrobound/roofs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "entrobound/sampling.hpp"

namespace entrobound {

namespace {

constexpr double kWeightFloor = 1e-14;
constexpr double kInitialStep = 0.3;

// ------------------------------------------------------------------ ensemble
// parameterization helpers

Eigen::MatrixXcd hermitian_from_params(const std::vector<double>& p, int m) {
  Eigen::MatrixXcd h(m, m);
  std::size_t idx = static_cast<std::size_t>(m);
  for (int j = 0; j < m; ++j) h(j, j) = p[static_cast<std::size_t>(j)];
  for (int j = 0; j < m; ++j) {
    for (int k = j + 1; k < m; ++k) {
      const std::complex<double> v(p[idx], p[idx + 1]);
      idx += 2;
      h(j, k) = v;
      h(k, j) = std::conj(v);
    }
  }
  return h;
}

// exp(i H) restricted to its first r columns: an m x r isometry.
Eigen::MatrixXcd isometry_exp(const Eigen::MatrixXcd& h, int r) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw std::domain_error("isometry_exp: eigensolver failed");
  const Eigen::Index m = h.rows();
  Eigen::VectorXcd phases(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double lam = es.eigenvalues()[i];
    phases[i] = std::complex<double>(std::cos(lam), std::sin(lam));
  }
  const Eigen::MatrixXcd u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return u.leftCols(r);
}

// Columns sqrt(mu_i) v_i over the top-r eigenpairs of rho, so that
// B B^dagger = rho on its numerical support.
Eigen::MatrixXcd weighted_factor(const DensityMatrix& rho, int r) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix());
  if (es.info() != Eigen::Success) throw std::domain_error("weighted_factor: eigensolver failed");
  const Eigen::Index d = rho.dim();
  Eigen::MatrixXcd b(d, r);
  for (int i = 0; i < r; ++i) {
    const Eigen::Index src = d - 1 - i;  // eigenvalues come back ascending
    b.col(i) = es.eigenvectors().col(src) * std::sqrt(std::max(0.0, es.eigenvalues()[src]));
  }
  return b;
}

// tr_B of the outer product w w^dagger without forming it: reshape w into
// the dim_a x dim_b amplitude matrix M and return M M^dagger.
Eigen::MatrixXcd reduced_of_vector(const Eigen::VectorXcd& w, const BipartiteShape& shape) {
  using RowMajorMat =
      Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMajorMat> m(w.data(), shape.dim_a, shape.dim_b);
  return m * m.adjoint();
}

// Phi(w w^dagger) accumulated from the transformed vectors K_i w.
Eigen::MatrixXcd channel_output_of_vector(const Eigen::VectorXcd& w, const Channel& phi) {
  Eigen::MatrixXcd tau = Eigen::MatrixXcd::Zero(phi.dim_out(), phi.dim_out());
  for (const auto& k : phi.kraus()) {
    const Eigen::VectorXcd v = k * w;
    tau.noalias() += v * v.adjoint();
  }
  return tau;
}

// Per-evaluation detail of one decomposition.  Member contributions are
// accumulated at the unnormalized tau = p * sigma level, where the two
// functionals absorb the weight exactly: s1(tau) = p S(sigma) and
// sqrt(e2(tau)) = p sqrt(e2(sigma)).
struct EvalDetail {
  double ef_natural = 0.0;  // sum_j p_j S(sigma_j), natural log
  double conc = 0.0;        // 2 sum_j p_j sqrt(e2(sigma_j))
  int n_max = 1;            // max cleaned support size over members
  double recomb_defect = 0.0;
};

template <typename MemberMatrixFn>
EvalDetail evaluate_decomposition(const Eigen::MatrixXcd& bfac, const Eigen::MatrixXcd& target,
                                  const std::vector<double>& params, int m,
                                  MemberMatrixFn&& member_matrix) {
  const int r = static_cast<int>(bfac.cols());
  const Eigen::MatrixXcd u = isometry_exp(hermitian_from_params(params, m), r);
  const Eigen::MatrixXcd w = bfac * u.transpose();  // d x m member columns
  EvalDetail out;
  out.recomb_defect = (w * w.adjoint() - target).cwiseAbs().maxCoeff();
  for (int j = 0; j < m; ++j) {
    const double p = w.col(j).squaredNorm();
    if (p < kWeightFloor) continue;
    const auto f = roofs_detail::cleaned_functionals(member_matrix(Eigen::VectorXcd(w.col(j))));
    out.ef_natural += f.s1_natural;
    out.conc += 2.0 * std::sqrt(f.e2);
    out.n_max = std::max(out.n_max, f.rank);
  }
  return out;
}

// ----------------------------------------------------------------- optimizer

struct SearchRun {
  std::vector<double> params;
  double value = 0.0;
  long long evals = 0;
  bool converged = false;
};

template <typename EvalFn, typename AcceptFn>
SearchRun coordinate_search(std::vector<double> params, int max_sweeps, double step_tol,
                            EvalFn&& eval, AcceptFn&& on_accept) {
  SearchRun run;
  run.value = eval(params);
  run.evals = 1;
  double step = kInitialStep;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool improved = false;
    for (std::size_t i = 0; i < params.size(); ++i) {
      const double saved = params[i];
      for (const double dir : {1.0, -1.0}) {
        params[i] = saved + dir * step;
        const double v = eval(params);
        ++run.evals;
        if (v < run.value) {
          on_accept(v - run.value);
          run.value = v;
          improved = true;
          break;  // keep the move, continue with the next coordinate
        }
        params[i] = saved;
      }
    }
    if (!improved) {
      step *= 0.5;
      if (step < step_tol) {
        run.converged = true;
        break;
      }
    }
  }
  run.params = std::move(params);
  return run;
}

template <typename EvalFn, typename RandomizeFn>
SearchRun run_restarts(const std::vector<double>& init0, const RoofConfig& cfg,
                       const char* restart_label, EvalFn&& eval, RandomizeFn&& randomize,
                       RoofAudit& audit) {
  const int restarts = std::max(1, cfg.restarts);
  auto on_accept = [&audit](double delta) {
    audit.max_best_increase = std::max(audit.max_best_increase, delta);
  };
  SearchRun best;
  bool have = false;
  long long total_evals = 0;
  for (int r = 0; r < restarts; ++r) {
    std::vector<double> init = init0;
    if (r > 0) {
      TrialRng rng(SeedSpec{cfg.seed, restart_label}, static_cast<std::uint64_t>(r));
      randomize(init, rng);
    }
    SearchRun run = coordinate_search(std::move(init), cfg.max_iters, cfg.step_tol, eval, on_accept);
    total_evals += run.evals;
    if (!have || run.value < best.value) {
      if (have) on_accept(run.value - best.value);
      best = std::move(run);
      have = true;
    }
  }
  best.evals = total_evals;
  return best;
}

void randomize_angles(std::vector<double>& p, TrialRng& rng) {
  for (double& x : p) x = (rng.uniform01() * 2.0 - 1.0) * std::numbers::pi;
}

}  // namespace

// ----------------------------------------------------------- public surface

namespace roofs_detail {

CleanFunctionals cleaned_functionals(const Spectrum& s) {
  CleanFunctionals f;
  if (s.size() == 0 || s[0] <= 0.0) return f;
  const double cut = tol::rank * s[0];
  double sum = 0.0;
  double eta_sum = 0.0;
  double e2 = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double x = s[i];
    if (x <= cut) break;  // sorted non-increasing: the rest is sub-threshold
    e2 += x * sum;        // pairwise accumulation over kept entries
    sum += x;
    eta_sum += eta(x);
    ++f.rank;
  }
  f.s1_natural = std::max(0.0, eta_sum - eta(sum));
  f.e2 = e2;
  return f;
}

CleanFunctionals cleaned_functionals(const Eigen::MatrixXcd& hermitian_psd) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian_psd, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw std::domain_error("cleaned_functionals: eigensolver failed");
  }
  std::vector<double> vals(static_cast<std::size_t>(es.eigenvalues().size()));
  for (std::size_t i = 0; i < vals.size(); ++i) {
    vals[i] = es.eigenvalues()[static_cast<Eigen::Index>(vals.size() - 1 - i)];
  }
  return cleaned_functionals(Spectrum(std::move(vals)));
}

}  // namespace roofs_detail

Ensemble::Ensemble(std::vector<EnsembleMember> members, const DensityMatrix& target)
    : members_(std::move(members)), dim_(target.dim()) {
  if (members_.empty()) throw std::invalid_argument("Ensemble: at least one member required");
  double wsum = 0.0;
  for (const auto& m : members_) {
    if (m.state.dim() != dim_) throw std::domain_error("Ensemble: member dimension mismatch");
    if (!(m.weight > 0.0)) throw std::domain_error("Ensemble: weights must be positive");
    wsum += m.weight;
  }
  if (std::abs(wsum - 1.0) > tol::trace) {
    throw std::domain_error("Ensemble: weights sum to " + std::to_string(wsum) + ", expected 1");
  }
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim_, dim_);
  for (const auto& m : members_) {
    acc.noalias() += m.weight * (m.state.amplitudes() * m.state.amplitudes().adjoint());
  }
  const double defect = (acc - target.matrix()).cwiseAbs().maxCoeff();
  if (defect > tol::ensemble) {
    throw std::domain_error("Ensemble: recombination defect " + std::to_string(defect) +
                            " exceeds tolerance");
  }
}

Ensemble decompose_via_isometry(const DensityMatrix& rho, int m,
                                const std::vector<double>& params) {
  const int r = std::max(1, rho.spectrum().numerical_rank());
  if (m < r) {
    throw std::domain_error("decompose_via_isometry: need at least rank(rho) = " +
                            std::to_string(r) + " members");
  }
  if (params.size() != static_cast<std::size_t>(m) * static_cast<std::size_t>(m)) {
    throw std::invalid_argument("decompose_via_isometry: expected m*m generator coordinates");
  }
  const Eigen::MatrixXcd bfac = weighted_factor(rho, r);
  const Eigen::MatrixXcd u = isometry_exp(hermitian_from_params(params, m), r);
  const Eigen::MatrixXcd w = bfac * u.transpose();
  std::vector<EnsembleMember> members;
  for (int j = 0; j < m; ++j) {
    const double p = w.col(j).squaredNorm();
    if (p < kWeightFloor) continue;
    members.push_back({p, PureState(w.col(j) / std::sqrt(p))});
  }
  return Ensemble(std::move(members), rho);
}

double roof_objective_ef(const Ensemble& ens, const BipartiteShape& shape, LogBase base) {
  if (ens.dim() != shape.total()) {
    throw std::domain_error("roof_objective_ef: ensemble does not live on the given shape");
  }
  double acc = 0.0;
  for (const auto& m : ens.members()) {
    const auto f = roofs_detail::cleaned_functionals(
        Eigen::MatrixXcd(reduced_of_vector(m.state.amplitudes(), shape)));
    acc += m.weight * f.s1_natural;
  }
  return acc * log_scale(base);
}

double roof_objective_concurrence(const Ensemble& ens, const BipartiteShape& shape) {
  if (ens.dim() != shape.total()) {
    throw std::domain_error("roof_objective_concurrence: ensemble does not live on the given shape");
  }
  double acc = 0.0;
  for (const auto& m : ens.members()) {
    const auto f = roofs_detail::cleaned_functionals(
        Eigen::MatrixXcd(reduced_of_vector(m.state.amplitudes(), shape)));
    acc += 2.0 * m.weight * std::sqrt(f.e2);
  }
  return acc;
}

double ef_bound_from_concurrence(double c_value, int n, LogBase base) {
  if (c_value < 0.0) throw std::domain_error("ef_bound_from_concurrence: negative concurrence");
  if (n < 2) throw std::domain_error("ef_bound_from_concurrence: n must be at least 2");
  return std::log(static_cast<double>(n)) * log_scale(base) *
         std::sqrt(n / (2.0 * (n - 1.0))) * c_value;
}

BoundReport minimize_roof(const DensityMatrix& rho, const BipartiteShape& shape,
                          RoofObjective objective, const RoofConfig& cfg, LogBase base) {
  if (rho.dim() != shape.total()) {
    throw std::domain_error("minimize_roof: state dimension does not match the shape");
  }
  const double scale = log_scale(base);
  const int r = std::max(1, rho.spectrum().numerical_rank());
  const int m = cfg.ensemble_size > 0 ? cfg.ensemble_size : r;
  if (m < r) throw std::domain_error("minimize_roof: ensemble_size below the rank of the state");

  BoundReport rep;
  rep.kind = objective == RoofObjective::ef ? "ef" : "concurrence";
  rep.base = base;
  rep.seed = cfg.seed;
  rep.ensemble_size = m;
  rep.restarts = std::max(1, cfg.restarts);

  const Eigen::MatrixXcd bfac = weighted_factor(rho, r);
  auto eval_detail = [&](const std::vector<double>& p) {
    return evaluate_decomposition(bfac, rho.matrix(), p, m, [&](const Eigen::VectorXcd& w) {
      return reduced_of_vector(w, shape);
    });
  };
  auto eval = [&](const std::vector<double>& p) {
    const EvalDetail d = eval_detail(p);
    RoofAudit& a = rep.audit;
    ++a.ensembles_evaluated;
    a.max_recombination_defect = std::max(a.max_recombination_defect, d.recomb_defect);
    const double ef_value = d.ef_natural * scale;
    const double coeff = ef_bound_from_concurrence(1.0, std::max(2, d.n_max), base);
    a.worst_termwise_excess = std::max(a.worst_termwise_excess, ef_value - coeff * d.conc);
    return objective == RoofObjective::ef ? ef_value : d.conc;
  };

  const std::vector<double> zeros(static_cast<std::size_t>(m) * m, 0.0);
  const SearchRun run = run_restarts(zeros, cfg, "roof-restart", eval, randomize_angles, rep.audit);

  const EvalDetail d0 = eval_detail(zeros);
  rep.eigen_ensemble_value = objective == RoofObjective::ef ? d0.ef_natural * scale : d0.conc;

  const EvalDetail dbest = eval_detail(run.params);
  rep.n_used = std::max(2, dbest.n_max);
  rep.bound_value = run.value;
  rep.iterations = run.evals;
  rep.converged = run.converged;
  rep.certificate_ensemble = decompose_via_isometry(rho, m, run.params);
  return rep;
}

BoundReport min_output_entropy_bound(const Channel& phi, const RoofConfig& cfg, LogBase base,
                                     std::optional<int> n_override) {
  BoundReport rep;
  rep.kind = "min-output-entropy";
  rep.base = base;
  rep.seed = cfg.seed;
  rep.restarts = std::max(1, cfg.restarts);

  const Eigen::Index din = phi.dim_in();
  auto state_of = [&](const std::vector<double>& p) -> std::optional<Eigen::VectorXcd> {
    Eigen::VectorXcd v(din);
    for (Eigen::Index i = 0; i < din; ++i) {
      v[i] = std::complex<double>(p[static_cast<std::size_t>(2 * i)],
                                  p[static_cast<std::size_t>(2 * i + 1)]);
    }
    const double nrm = v.norm();
    if (nrm < 1e-8) return std::nullopt;
    return Eigen::VectorXcd(v / nrm);
  };
  auto eval = [&](const std::vector<double>& p) {
    const auto psi = state_of(p);
    if (!psi) return std::numeric_limits<double>::infinity();
    return -channel_output_of_vector(*psi, phi).squaredNorm();  // maximize purity
  };
  auto randomize = [](std::vector<double>& p, TrialRng& rng) {
    for (double& x : p) x = rng.normal();
  };

  std::vector<double> init0(static_cast<std::size_t>(2 * din), 0.0);
  init0[0] = 1.0;  // basis start; random restarts cover the rest of the sphere
  const SearchRun run = run_restarts(init0, cfg, "moe-restart", eval, randomize, rep.audit);

  const PureState cert(*state_of(run.params));
  const DensityMatrix sigma = apply(phi, projector(cert));
  const auto f = roofs_detail::cleaned_functionals(sigma.spectrum());
  const int n_est = output_rank_estimate(phi, std::max(1, cfg.rank_trials), cfg.seed);
  rep.n_used = std::max(1, n_override ? *n_override : std::max(n_est, f.rank));
  // Support of size one means every optimal output is pure: both sides of
  // the bound vanish and the coefficient is not needed.
  rep.bound_value = rep.n_used >= 2 ? c_constant(rep.n_used, base) * std::sqrt(f.e2) : 0.0;
  rep.direct_estimate = f.s1_natural * log_scale(base);
  rep.best_purity = -run.value;
  rep.certificate_state = cert;
  rep.iterations = run.evals;
  rep.converged = run.converged;
  return rep;
}

BoundReport holevo_lower_bound(const Channel& phi, const DensityMatrix& rho,
                               const RoofConfig& cfg, LogBase base,
                               std::optional<int> n_override) {
  if (rho.dim() != phi.dim_in()) {
    throw std::domain_error("holevo_lower_bound: state dimension does not match channel input");
  }
  const double scale = log_scale(base);
  BoundReport rep;
  rep.kind = "holevo";
  rep.base = base;
  rep.seed = cfg.seed;
  rep.restarts = std::max(1, cfg.restarts);

  const DensityMatrix out_avg = apply(phi, rho);
  const double s_out = s1(out_avg.spectrum(), base);

  const int r = std::max(1, rho.spectrum().numerical_rank());
  const int m = cfg.ensemble_size > 0 ? cfg.ensemble_size : r;
  if (m < r) throw std::domain_error("holevo_lower_bound: ensemble_size below the rank of rho");
  rep.ensemble_size = m;

  const Eigen::MatrixXcd bfac = weighted_factor(rho, r);
  auto eval_detail = [&](const std::vector<double>& p) {
    return evaluate_decomposition(bfac, rho.matrix(), p, m, [&](const Eigen::VectorXcd& w) {
      return channel_output_of_vector(w, phi);
    });
  };
  auto eval = [&](const std::vector<double>& p) {
    const EvalDetail d = eval_detail(p);
    RoofAudit& a = rep.audit;
    ++a.ensembles_evaluated;
    a.max_recombination_defect = std::max(a.max_recombination_defect, d.recomb_defect);
    const double term =
        d.conc > 0.0 ? ef_bound_from_concurrence(d.conc, std::max(2, d.n_max), base) : 0.0;
    // bound - chi on this very ensemble; equals the termwise excess.
    const double defect = d.ef_natural * scale - term;
    a.worst_holevo_defect = std::max(a.worst_holevo_defect, defect);
    a.worst_termwise_excess = std::max(a.worst_termwise_excess, defect);
    return d.conc;
  };

  const std::vector<double> zeros(static_cast<std::size_t>(m) * m, 0.0);
  const SearchRun run = run_restarts(zeros, cfg, "holevo-restart", eval, randomize_angles, rep.audit);

  const EvalDetail dbest = eval_detail(run.params);
  const int n_est = output_rank_estimate(phi, std::max(1, cfg.rank_trials), cfg.seed);
  rep.n_used = std::max(1, n_override ? *n_override : std::max(n_est, dbest.n_max));
  const double c_est = dbest.conc;
  const double term =
      c_est > 0.0 ? ef_bound_from_concurrence(c_est, std::max(2, rep.n_used), base) : 0.0;
  rep.bound_value = s_out - term;
  rep.chi_estimate = s_out - dbest.ef_natural * scale;
  rep.c_phi_estimate = c_est;
  rep.output_entropy = s_out;
  rep.iterations = run.evals;
  rep.converged = run.converged;
  rep.certificate_ensemble = decompose_via_isometry(rho, m, run.params);
  return rep;
}

}  // namespace entrobound
