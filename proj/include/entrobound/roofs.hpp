// Copyright The entrobound Authors
// SPDX-License-Identifier: Apache-2.0
//
// Convex-roof machinery: pure-state decompositions of a density matrix
// parameterized by isometries, the ensemble-averaged objectives (reduced
// entropy and reduced-e2 concurrence), a derivative-free minimizer over the
// decomposition family, and the three derived estimators:
//
//   - minimum-output-entropy upper bound for a channel,
//   - entanglement-of-formation / concurrence roof estimates with the
//     coefficient bound ef <= log(n)*sqrt(n/(2(n-1)))*concurrence,
//   - Holevo lower bound chi >= S(Phi(rho)) - coeff(n)*C_Phi(rho).
//
// Every ensemble the optimizer evaluates is audited in-line against the
// termwise coefficient inequality; reports carry the audit so a run is
// checkable instance-by-instance.
//
// Member functionals are evaluated on "cleaned" spectra: eigenvalues below
// tol::rank relative to the largest are treated as exact zeros, so the
// coefficient n, the entropy term, and the e2 term all see the same support
// and the termwise inequality is an exact theorem instance at every
// evaluation.

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entrobound/channels.hpp"
#include "entrobound/config.hpp"
#include "entrobound/spectra.hpp"

namespace entrobound {

struct EnsembleMember {
  double weight;
  PureState state;
};

// Weighted pure-state decomposition validated against its target: the
// weights are positive and sum to 1 within tol::trace, and
// sum_j p_j |psi_j><psi_j| reproduces the target within tol::ensemble.
class Ensemble {
 public:
  Ensemble(std::vector<EnsembleMember> members, const DensityMatrix& target);

  const std::vector<EnsembleMember>& members() const noexcept { return members_; }
  Eigen::Index dim() const noexcept { return dim_; }

 private:
  std::vector<EnsembleMember> members_;
  Eigen::Index dim_;
};

// Optimizer policy for the roof minimizations.
struct RoofConfig {
  int ensemble_size = 0;   // members m; 0 means the numerical rank of the target
  int restarts = 8;        // restart 0 is the identity (eigendecomposition) start
  int max_iters = 4000;    // cap on coordinate sweeps per restart
  double step_tol = 1e-7;  // stop once the shrinking step falls below this
  std::uint64_t seed = 0;
  int rank_trials = 64;    // samples for the output-rank estimate
};

enum class RoofObjective { ef, concurrence };

// Running audit over every ensemble an optimizer evaluated.
struct RoofAudit {
  long long ensembles_evaluated = 0;
  // max over evaluations of ef - coeff(n)*concurrence (termwise bound; must
  // stay <= tol::probe).
  double worst_termwise_excess = 0.0;
  // max over evaluations of bound - chi on the same ensemble (Holevo runs;
  // must stay <= tol::probe).
  double worst_holevo_defect = 0.0;
  // worst recombination defect of any evaluated decomposition.
  double max_recombination_defect = 0.0;
  // largest accepted change of the best-so-far value (must stay <= 0).
  double max_best_increase = 0.0;
};

// Result of one bound estimation.  bound_value is always an estimate on the
// safe side of its roof (upper bound for roof minima; the Holevo report
// pairs its bound with the chi estimate from the same ensemble).
struct BoundReport {
  std::string kind;  // "ef" | "concurrence" | "min-output-entropy" | "holevo"
  double bound_value = 0.0;
  int n_used = 0;
  long long iterations = 0;  // objective evaluations across all restarts
  bool converged = false;
  LogBase base = LogBase::natural;
  std::uint64_t seed = 0;
  int ensemble_size = 0;
  int restarts = 0;

  std::optional<Ensemble> certificate_ensemble;
  std::optional<PureState> certificate_state;

  std::optional<double> direct_estimate;       // MOE: entropy at the certificate
  std::optional<double> best_purity;           // MOE: tr(Phi(pi)^2) at the certificate
  std::optional<double> eigen_ensemble_value;  // roof kinds: identity-start objective
  std::optional<double> chi_estimate;          // Holevo: chi on the best ensemble
  std::optional<double> c_phi_estimate;        // Holevo: C_Phi on the best ensemble
  std::optional<double> output_entropy;        // Holevo: S(Phi(rho))

  RoofAudit audit;
};

namespace roofs_detail {
// Functionals of a unit-trace PSD matrix on its cleaned support: natural-log
// entropy, pairwise e2, and the support size.
struct CleanFunctionals {
  double s1_natural = 0.0;
  double e2 = 0.0;
  int rank = 0;
};
CleanFunctionals cleaned_functionals(const Spectrum& s);
CleanFunctionals cleaned_functionals(const Eigen::MatrixXcd& hermitian_psd);
}  // namespace roofs_detail

// The decomposition family: members are columns of B*U^T where B packs the
// weighted eigenvectors of rho (d x r) and U is the m x r isometry
// exp(i H(params)) restricted to its first r columns.  params holds the m^2
// real generator coordinates of the Hermitian H (m diagonal entries, then
// re/im pairs above the diagonal, row-major).  Identity parameters (all
// zero) give the eigendecomposition ensemble itself.
Ensemble decompose_via_isometry(const DensityMatrix& rho, int m,
                                const std::vector<double>& params);

// sum_j p_j S(tr_B |psi_j><psi_j|) over the ensemble, in the given base.
double roof_objective_ef(const Ensemble& ens, const BipartiteShape& shape,
                         LogBase base = LogBase::natural);

// 2 sum_j p_j sqrt(e2(tr_B |psi_j><psi_j|)).
double roof_objective_concurrence(const Ensemble& ens, const BipartiteShape& shape);

// Derivative-free minimization of a roof objective over the decomposition
// family: coordinate search on the isometry generators with a shrinking
// step, restarted from the identity and from seeded random generators.
// The reported value is an upper bound on the true roof and never exceeds
// the eigendecomposition-ensemble value.
BoundReport minimize_roof(const DensityMatrix& rho, const BipartiteShape& shape,
                          RoofObjective objective, const RoofConfig& cfg,
                          LogBase base = LogBase::natural);

// log(n) * sqrt(n/(2(n-1))) * c_value, the coefficient bound turning a
// concurrence estimate into an entanglement-of-formation bound.
double ef_bound_from_concurrence(double c_value, int n, LogBase base = LogBase::natural);

// Upper bound on the minimum output entropy: maximize tr(Phi(pi)^2) over
// pure inputs, then bound min S <= c_n * sqrt(e2(Phi(pi*))) with n the
// larger of the sampled output-rank estimate and the certificate's own
// rank (or the explicit override).  Also reports the direct entropy at the
// certificate for comparison.
BoundReport min_output_entropy_bound(const Channel& phi, const RoofConfig& cfg,
                                     LogBase base = LogBase::natural,
                                     std::optional<int> n_override = std::nullopt);

// Lower bound on the Holevo quantity of rho through phi: minimizes the
// channel concurrence C_Phi = 2 sum p_j sqrt(e2(Phi(pi_j))) over input
// decompositions and returns S(Phi(rho)) - coeff(n)*C_Phi together with the
// chi estimate S(Phi(rho)) - sum p_j S(Phi(pi_j)) from the same ensemble.
BoundReport holevo_lower_bound(const Channel& phi, const DensityMatrix& rho,
                               const RoofConfig& cfg, LogBase base = LogBase::natural,
                               std::optional<int> n_override = std::nullopt);

}  // namespace entrobound
