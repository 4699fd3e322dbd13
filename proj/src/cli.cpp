// Copyright The entrobound Authors
// SPDX-License-Identifier: Apache-2.0

#include "entrobound/cli.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "entrobound/io.hpp"
#include "entrobound/lab.hpp"
#include "entrobound/roofs.hpp"

namespace entrobound {

namespace {

LogBase base_of(const std::string& name) {
  if (name == "2") return LogBase::base2;
  if (name == "10") return LogBase::base10;
  return LogBase::natural;
}

// --seed wins; otherwise ENTROBOUND_SEED; otherwise 0.
std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t flag_value) {
  if (opt != nullptr && opt->count() > 0) return flag_value;
  if (const char* env = std::getenv("ENTROBOUND_SEED")) {
    std::uint64_t v = 0;
    const char* end = env + std::strlen(env);
    const auto [ptr, ec] = std::from_chars(env, end, v);
    if (ec != std::errc{} || ptr != end) {
      throw std::domain_error("ENTROBOUND_SEED must be an unsigned integer");
    }
    return v;
  }
  return 0;
}

void emit(const std::string& document, const std::string& out_path) {
  if (out_path.empty()) {
    std::fwrite(document.data(), 1, document.size(), stdout);
  } else {
    io::write_text_atomic(out_path, document);
  }
}

bool audit_clean(const BoundReport& rep) {
  const RoofAudit& a = rep.audit;
  return a.worst_termwise_excess <= tol::probe && a.worst_holevo_defect <= tol::probe &&
         a.max_best_increase <= tol::probe;
}

void add_log_base_flag(CLI::App* cmd, std::string& base) {
  cmd->add_option("--log-base", base, "Entropy log base")
      ->check(CLI::IsMember({"e", "2", "10"}));
}

void add_out_flag(CLI::App* cmd, std::string& out) {
  cmd->add_option("--out", out, "Write the report here instead of stdout");
}

struct BoundArgs {
  std::string channel;
  std::string state;
  std::string base = "e";
  std::string out;
  int restarts = 8;
  int ensemble_size = 0;
  int n_override = 0;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* n_override_opt = nullptr;

  RoofConfig config() const {
    RoofConfig cfg;
    cfg.ensemble_size = ensemble_size;
    cfg.restarts = restarts;
    cfg.seed = resolve_seed(seed_opt, seed);
    return cfg;
  }
  std::optional<int> override_n() const {
    if (n_override_opt != nullptr && n_override_opt->count() > 0) return n_override;
    return std::nullopt;
  }
};

void add_bound_flags(CLI::App* cmd, BoundArgs& a, bool needs_channel, bool needs_state) {
  if (needs_channel) {
    cmd->add_option("--channel", a.channel, "Channel file (JSON, Kraus form)")->required();
  }
  if (needs_state) {
    cmd->add_option("--state", a.state, "State file (JSON density matrix)")->required();
  }
  cmd->add_option("--restarts", a.restarts, "Optimizer restarts")->check(CLI::PositiveNumber);
  cmd->add_option("--ensemble-size", a.ensemble_size,
                  "Decomposition members (0 = rank of the state)");
  a.seed_opt = cmd->add_option("--seed", a.seed, "Random seed (default ENTROBOUND_SEED or 0)");
  a.n_override_opt =
      cmd->add_option("--n-override", a.n_override, "Fix the coefficient dimension n")
          ->check(CLI::PositiveNumber);
  add_log_base_flag(cmd, a.base);
  add_out_flag(cmd, a.out);
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{
      "Entropy-bound toolkit: verification sweeps, figure data, conjecture "
      "probes, and roof-based channel bounds"};
  app.require_subcommand(1);

  // ---- verify
  auto* verify =
      app.add_subcommand("verify", "Sweep random instances of the bound and report the gaps");
  int v_dim = 0;
  long long v_trials = 0;
  std::uint64_t v_seed = 0;
  std::string v_measure = "simplex";
  std::string v_base = "e";
  std::string v_out;
  verify->add_option("--dim", v_dim, "Spectrum dimension")->required();
  verify->add_option("--trials", v_trials, "Sampled instances")
      ->required()
      ->check(CLI::PositiveNumber);
  auto* v_seed_opt =
      verify->add_option("--seed", v_seed, "Random seed (default ENTROBOUND_SEED or 0)");
  verify->add_option("--measure", v_measure, "Sampling measure")
      ->check(CLI::IsMember({"simplex", "matrix"}));
  add_log_base_flag(verify, v_base);
  add_out_flag(verify, v_out);

  // ---- figures
  auto* figures = app.add_subcommand("figures", "Emit CSV data for the illustration grids");
  figures->require_subcommand(1);
  auto* fig1 = figures->add_subcommand(
      "fig1", "Two-level entropy against the 2*log(2)*sqrt(x(1-x)) bound");
  int f1_res = 0;
  std::string f1_base = "e";
  std::string f1_out;
  fig1->add_option("--resolution", f1_res, "Grid subdivisions")->required();
  add_log_base_flag(fig1, f1_base);
  add_out_flag(fig1, f1_out);
  auto* fig2 =
      figures->add_subcommand("fig2", "Bound-minus-entropy surface over the 3-level simplex");
  int f2_res = 0;
  std::string f2_base = "e";
  std::string f2_out;
  fig2->add_option("--resolution", f2_res, "Grid subdivisions per side")->required();
  add_log_base_flag(fig2, f2_base);
  add_out_flag(fig2, f2_out);

  // ---- conjecture
  auto* conjecture = app.add_subcommand("conjecture", "Numerical probes of open properties");
  conjecture->require_subcommand(1);
  auto* concavity =
      conjecture->add_subcommand("concavity", "Midpoint-concavity probe of s1/sqrt(e2)");
  int c_dim = 0;
  long long c_trials = 0;
  std::uint64_t c_seed = 0;
  std::string c_level = "spectrum";
  std::string c_base = "e";
  std::string c_out;
  concavity->add_option("--dim", c_dim, "Instance dimension")->required();
  concavity->add_option("--trials", c_trials, "Probed pairs")
      ->required()
      ->check(CLI::PositiveNumber);
  auto* c_seed_opt =
      concavity->add_option("--seed", c_seed, "Random seed (default ENTROBOUND_SEED or 0)");
  concavity->add_option("--level", c_level, "Mix spectra coordinate-wise or as matrices")
      ->check(CLI::IsMember({"spectrum", "matrix"}));
  add_log_base_flag(concavity, c_base);
  add_out_flag(concavity, c_out);
  auto* ek = conjecture->add_subcommand("ek-monotone",
                                        "Directional dS/de_k sign probe on interior spectra");
  int e_dim = 0;
  long long e_trials = 0;
  std::uint64_t e_seed = 0;
  std::string e_level = "spectrum";
  std::string e_base = "e";
  std::string e_out;
  ek->add_option("--dim", e_dim, "Spectrum dimension")->required();
  ek->add_option("--trials", e_trials, "Probed spectra")->required()->check(CLI::PositiveNumber);
  auto* e_seed_opt =
      ek->add_option("--seed", e_seed, "Random seed (default ENTROBOUND_SEED or 0)");
  ek->add_option("--level", e_level, "Probe level (only spectrum is defined)")
      ->check(CLI::IsMember({"spectrum"}));
  add_log_base_flag(ek, e_base);
  add_out_flag(ek, e_out);

  // ---- bounds
  auto* bounds = app.add_subcommand("bounds", "Roof-based channel and entanglement bounds");
  bounds->require_subcommand(1);
  auto* moe = bounds->add_subcommand("min-output-entropy",
                                     "Upper bound on the minimum output entropy of a channel");
  BoundArgs moe_args;
  add_bound_flags(moe, moe_args, /*needs_channel=*/true, /*needs_state=*/false);
  auto* ef = bounds->add_subcommand(
      "ef", "Entanglement-of-formation and concurrence roof estimates of a bipartite state");
  BoundArgs ef_args;
  add_bound_flags(ef, ef_args, /*needs_channel=*/false, /*needs_state=*/true);
  auto* holevo = bounds->add_subcommand(
      "holevo", "Lower bound on the Holevo quantity of a state through a channel");
  BoundArgs holevo_args;
  add_bound_flags(holevo, holevo_args, /*needs_channel=*/true, /*needs_state=*/true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) {
      const std::uint64_t seed = resolve_seed(v_seed_opt, v_seed);
      const std::string kind = "verify-" + v_measure;
      const SweepMeasure measure =
          v_measure == "matrix" ? SweepMeasure::matrix : SweepMeasure::simplex;
      const SweepReport rep =
          verify_theorem(v_dim, v_trials, measure, SeedSpec{seed, kind}, base_of(v_base));
      emit(io::sweep_report_document(rep, kind), v_out);
      return rep.violations == 0 ? 0 : 1;
    }
    if (fig1->parsed()) {
      emit(io::fig1_csv(fig1_data(f1_res, base_of(f1_base))), f1_out);
      return 0;
    }
    if (fig2->parsed()) {
      emit(io::fig2_csv(fig2_data(f2_res, base_of(f2_base))), f2_out);
      return 0;
    }
    if (concavity->parsed()) {
      const std::uint64_t seed = resolve_seed(c_seed_opt, c_seed);
      const ProbeLevel level =
          c_level == "matrix" ? ProbeLevel::matrix : ProbeLevel::spectrum;
      const ProbeReport rep = probe_concavity(c_dim, c_trials, level,
                                              SeedSpec{seed, "conjecture"}, base_of(c_base));
      emit(io::probe_report_document(rep), c_out);
      return rep.counterexample_count == 0 ? 0 : 1;
    }
    if (ek->parsed()) {
      const std::uint64_t seed = resolve_seed(e_seed_opt, e_seed);
      const ProbeReport rep =
          probe_ek_monotone(e_dim, e_trials, SeedSpec{seed, "conjecture"}, base_of(e_base));
      emit(io::probe_report_document(rep), e_out);
      return rep.counterexample_count == 0 ? 0 : 1;
    }
    if (moe->parsed()) {
      const Channel phi = io::load_channel_file(moe_args.channel);
      const BoundReport rep = min_output_entropy_bound(phi, moe_args.config(),
                                                       base_of(moe_args.base),
                                                       moe_args.override_n());
      emit(io::bound_report_document(rep), moe_args.out);
      return audit_clean(rep) ? 0 : 1;
    }
    if (ef->parsed()) {
      const io::ParsedState ps = io::load_state_file(ef_args.state);
      if (!ps.shape) {
        throw std::domain_error(ef_args.state +
                                ": ef needs a bipartite shape {dim_a, dim_b} in the state file");
      }
      const RoofConfig cfg = ef_args.config();
      const LogBase base = base_of(ef_args.base);
      const BoundReport ef_rep =
          minimize_roof(ps.state, *ps.shape, RoofObjective::ef, cfg, base);
      const BoundReport conc_rep =
          minimize_roof(ps.state, *ps.shape, RoofObjective::concurrence, cfg, base);
      emit(io::bound_report_document(ef_rep, &conc_rep), ef_args.out);
      return audit_clean(ef_rep) && audit_clean(conc_rep) ? 0 : 1;
    }
    if (holevo->parsed()) {
      const Channel phi = io::load_channel_file(holevo_args.channel);
      const io::ParsedState ps = io::load_state_file(holevo_args.state);
      const BoundReport rep =
          holevo_lower_bound(phi, ps.state, holevo_args.config(), base_of(holevo_args.base),
                             holevo_args.override_n());
      emit(io::bound_report_document(rep), holevo_args.out);
      return audit_clean(rep) ? 0 : 1;
    }
  } catch (const io::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;  // unreachable with require_subcommand(1)
}

}  // namespace entrobound
