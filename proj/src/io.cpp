// Copyright The entrobound Authors
// SPDX-License-Identifier: Apache-2.0

#include "entrobound/io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "entrobound/kernels.hpp"

namespace entrobound::io {

namespace {

using nlohmann::ordered_json;

LogBase base_from_name(std::string_view name, std::string_view origin) {
  if (name == "e") return LogBase::natural;
  if (name == "2") return LogBase::base2;
  if (name == "10") return LogBase::base10;
  throw ParseError(std::string(origin) + ": unknown log base '" + std::string(name) + "'");
}

EqualityClass classification_from_name(std::string_view name, std::string_view origin) {
  if (name == equality_class_name(EqualityClass::rank_one)) return EqualityClass::rank_one;
  if (name == equality_class_name(EqualityClass::uniform)) return EqualityClass::uniform;
  if (name == equality_class_name(EqualityClass::strict)) return EqualityClass::strict;
  throw ParseError(std::string(origin) + ": unknown classification '" + std::string(name) + "'");
}

ordered_json tolerance_object() {
  ordered_json t;
  t["clamp"] = tol::clamp;
  t["rank"] = tol::rank;
  t["eq"] = tol::eq;
  t["gap"] = tol::gap;
  t["fd"] = tol::fd;
  t["euler"] = tol::euler;
  t["herm"] = tol::herm;
  t["trace"] = tol::trace;
  t["spec"] = tol::spec;
  t["tp"] = tol::tp;
  t["norm"] = tol::norm;
  t["ensemble"] = tol::ensemble;
  t["probe"] = tol::probe;
  return t;
}

ordered_json envelope(std::string_view kind, LogBase base, std::uint64_t seed,
                      ordered_json payload) {
  ordered_json env;
  env["schema_version"] = 1;
  env["kind"] = std::string(kind);
  env["log_base"] = std::string(log_base_name(base));
  env["kernel_backend"] = std::string(kernels::active_backend().name);
  env["tolerances"] = tolerance_object();
  env["seed"] = seed;
  env["payload"] = std::move(payload);
  return env;
}

std::string dump_document(const ordered_json& doc) { return doc.dump(2) + "\n"; }

ordered_json amplitudes_json(const Eigen::VectorXcd& v) {
  ordered_json arr = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    arr.push_back(ordered_json::array({v[i].real(), v[i].imag()}));
  }
  return arr;
}

ordered_json finding_json(const ProbeFinding& f) {
  ordered_json j;
  j["trial"] = f.trial;
  j["k"] = f.k;
  j["margin"] = f.margin;
  if (!f.a.empty()) j["a"] = f.a;
  if (!f.b.empty()) j["b"] = f.b;
  if (!f.matrix_a.empty()) j["matrix_a"] = f.matrix_a;
  if (!f.matrix_b.empty()) j["matrix_b"] = f.matrix_b;
  return j;
}

ProbeFinding finding_from_json(const nlohmann::json& j) {
  ProbeFinding f;
  f.trial = j.at("trial").get<std::uint64_t>();
  f.k = j.at("k").get<int>();
  f.margin = j.at("margin").get<double>();
  if (j.contains("a")) f.a = j.at("a").get<std::vector<double>>();
  if (j.contains("b")) f.b = j.at("b").get<std::vector<double>>();
  if (j.contains("matrix_a")) f.matrix_a = j.at("matrix_a").get<std::vector<double>>();
  if (j.contains("matrix_b")) f.matrix_b = j.at("matrix_b").get<std::vector<double>>();
  return f;
}

ordered_json audit_json(const RoofAudit& a) {
  ordered_json j;
  j["ensembles_evaluated"] = a.ensembles_evaluated;
  j["worst_termwise_excess"] = a.worst_termwise_excess;
  j["worst_holevo_defect"] = a.worst_holevo_defect;
  j["max_recombination_defect"] = a.max_recombination_defect;
  j["max_best_increase"] = a.max_best_increase;
  return j;
}

ordered_json bound_payload(const BoundReport& rep) {
  ordered_json p;
  p["bound_value"] = rep.bound_value;
  p["n_used"] = rep.n_used;
  p["iterations"] = rep.iterations;
  p["converged"] = rep.converged;
  p["ensemble_size"] = rep.ensemble_size;
  p["restarts"] = rep.restarts;
  if (rep.direct_estimate) p["direct_estimate"] = *rep.direct_estimate;
  if (rep.best_purity) p["best_purity"] = *rep.best_purity;
  if (rep.eigen_ensemble_value) p["eigen_ensemble_value"] = *rep.eigen_ensemble_value;
  if (rep.chi_estimate) p["chi_estimate"] = *rep.chi_estimate;
  if (rep.c_phi_estimate) p["c_phi_estimate"] = *rep.c_phi_estimate;
  if (rep.output_entropy) p["output_entropy"] = *rep.output_entropy;
  if (rep.certificate_state) {
    ordered_json s;
    s["amplitudes"] = amplitudes_json(rep.certificate_state->amplitudes());
    p["certificate_state"] = std::move(s);
  }
  if (rep.certificate_ensemble) {
    ordered_json members = ordered_json::array();
    for (const auto& m : rep.certificate_ensemble->members()) {
      ordered_json mj;
      mj["weight"] = m.weight;
      mj["amplitudes"] = amplitudes_json(m.state.amplitudes());
      members.push_back(std::move(mj));
    }
    ordered_json e;
    e["members"] = std::move(members);
    p["certificate_ensemble"] = std::move(e);
  }
  p["audit"] = audit_json(rep.audit);
  return p;
}

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
  std::size_t pos = byte == 0 ? 0 : byte - 1;
  pos = std::min(pos, text.size());
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < pos; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

nlohmann::json parse_json(const std::string& text, std::string_view origin) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte);
    throw ParseError(std::string(origin) + ":" + std::to_string(line) + ":" +
                     std::to_string(col) + ": " + e.what());
  }
}

const nlohmann::json& require_field(const nlohmann::json& j, const char* key,
                                    std::string_view origin) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError(std::string(origin) + ": missing field '" + key + "'");
  }
  return *it;
}

Eigen::Index require_dim(const nlohmann::json& j, const char* key, std::string_view origin) {
  const auto& v = require_field(j, key, origin);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw ParseError(std::string(origin) + ": field '" + key + "' must be a positive integer");
  }
  return static_cast<Eigen::Index>(v.get<long long>());
}

std::complex<double> parse_entry(const nlohmann::json& e, std::string_view origin) {
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
    throw ParseError(std::string(origin) + ": matrix entries must be [re, im] number pairs");
  }
  return {e[0].get<double>(), e[1].get<double>()};
}

Eigen::MatrixXcd parse_matrix(const nlohmann::json& m, Eigen::Index rows, Eigen::Index cols,
                              std::string_view origin) {
  if (!m.is_array() || static_cast<Eigen::Index>(m.size()) != rows) {
    throw ParseError(std::string(origin) + ": expected " + std::to_string(rows) +
                     " matrix rows");
  }
  Eigen::MatrixXcd out(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = m[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ParseError(std::string(origin) + ": row " + std::to_string(r) + " must have " +
                       std::to_string(cols) + " entries");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      out(r, c) = parse_entry(row[static_cast<std::size_t>(c)], origin);
    }
  }
  return out;
}

nlohmann::json parse_envelope(const std::string& text, std::string_view origin) {
  nlohmann::json doc = parse_json(text, origin);
  const auto& version = require_field(doc, "schema_version", origin);
  if (!version.is_number_integer() || version.get<int>() != 1) {
    throw ParseError(std::string(origin) + ": unsupported schema_version");
  }
  return doc;
}

}  // namespace

std::string format12(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::string sweep_report_document(const SweepReport& rep, std::string_view kind) {
  ordered_json p;
  p["dimension"] = rep.dimension;
  p["trials"] = rep.trials;
  p["min_gap"] = rep.min_gap;
  p["min_gap_trial"] = rep.min_gap_trial;
  p["violations"] = rep.violations;
  p["equality_count"] = rep.equality_count;
  ordered_json hits = ordered_json::array();
  for (const auto& h : rep.equality_hits) {
    ordered_json hj;
    hj["trial"] = h.trial;
    hj["classification"] = std::string(equality_class_name(h.classification));
    hj["gap"] = h.gap;
    hits.push_back(std::move(hj));
  }
  p["equality_hits"] = std::move(hits);
  return dump_document(envelope(kind, rep.base, rep.seed, std::move(p)));
}

std::string probe_report_document(const ProbeReport& rep) {
  ordered_json p;
  p["probe_kind"] = rep.probe_kind;
  p["dimension"] = rep.dimension;
  p["trials"] = rep.trials;
  p["worst_margin"] = rep.worst_margin;
  p["worst_trial"] = rep.worst_trial;
  p["counterexample_count"] = rep.counterexample_count;
  p["resamples"] = rep.resamples;
  ordered_json cxs = ordered_json::array();
  for (const auto& f : rep.counterexamples) cxs.push_back(finding_json(f));
  p["counterexamples"] = std::move(cxs);
  return dump_document(envelope(rep.probe_kind, rep.base, rep.seed, std::move(p)));
}

std::string bound_report_document(const BoundReport& rep, const BoundReport* concurrence_run) {
  ordered_json p = bound_payload(rep);
  if (concurrence_run != nullptr) {
    p["concurrence_run"] = bound_payload(*concurrence_run);
    p["ef_bound_from_concurrence"] = ef_bound_from_concurrence(
        concurrence_run->bound_value, std::max(2, concurrence_run->n_used), rep.base);
  }
  return dump_document(envelope(rep.kind, rep.base, rep.seed, std::move(p)));
}

std::pair<SweepReport, std::string> parse_sweep_report(const std::string& text) {
  const std::string_view origin = "sweep-report";
  const nlohmann::json doc = parse_envelope(text, origin);
  const nlohmann::json& p = require_field(doc, "payload", origin);
  SweepReport rep;
  rep.base = base_from_name(require_field(doc, "log_base", origin).get<std::string>(), origin);
  rep.seed = require_field(doc, "seed", origin).get<std::uint64_t>();
  rep.dimension = require_field(p, "dimension", origin).get<int>();
  rep.trials = require_field(p, "trials", origin).get<long long>();
  rep.min_gap = require_field(p, "min_gap", origin).get<double>();
  rep.min_gap_trial = require_field(p, "min_gap_trial", origin).get<std::uint64_t>();
  rep.violations = require_field(p, "violations", origin).get<long long>();
  rep.equality_count = require_field(p, "equality_count", origin).get<long long>();
  for (const auto& hj : require_field(p, "equality_hits", origin)) {
    EqualityHit h;
    h.trial = hj.at("trial").get<std::uint64_t>();
    h.classification =
        classification_from_name(hj.at("classification").get<std::string>(), origin);
    h.gap = hj.at("gap").get<double>();
    rep.equality_hits.push_back(h);
  }
  return {std::move(rep), require_field(doc, "kind", origin).get<std::string>()};
}

ProbeReport parse_probe_report(const std::string& text) {
  const std::string_view origin = "probe-report";
  const nlohmann::json doc = parse_envelope(text, origin);
  const nlohmann::json& p = require_field(doc, "payload", origin);
  ProbeReport rep;
  rep.base = base_from_name(require_field(doc, "log_base", origin).get<std::string>(), origin);
  rep.seed = require_field(doc, "seed", origin).get<std::uint64_t>();
  rep.probe_kind = require_field(p, "probe_kind", origin).get<std::string>();
  rep.dimension = require_field(p, "dimension", origin).get<int>();
  rep.trials = require_field(p, "trials", origin).get<long long>();
  rep.worst_margin = require_field(p, "worst_margin", origin).get<double>();
  rep.worst_trial = require_field(p, "worst_trial", origin).get<std::uint64_t>();
  rep.counterexample_count = require_field(p, "counterexample_count", origin).get<long long>();
  rep.resamples = require_field(p, "resamples", origin).get<long long>();
  for (const auto& fj : require_field(p, "counterexamples", origin)) {
    rep.counterexamples.push_back(finding_from_json(fj));
  }
  return rep;
}

std::string fig1_csv(const std::vector<Fig1Row>& rows) {
  std::string out = "x,entropy,bound\n";
  for (const auto& r : rows) {
    out += format12(r.x);
    out += ',';
    out += format12(r.entropy);
    out += ',';
    out += format12(r.bound);
    out += '\n';
  }
  return out;
}

std::string fig2_csv(const std::vector<Fig2Row>& rows) {
  std::string out = "x,y,diff\n";
  for (const auto& r : rows) {
    out += format12(r.x);
    out += ',';
    out += format12(r.y);
    out += ',';
    out += format12(r.diff);
    out += '\n';
  }
  return out;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_atomic(const std::string& path, std::string_view content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(tmp + ": cannot open for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error(tmp + ": write failed");
  }
  std::filesystem::rename(tmp, path);
}

Channel parse_channel_text(const std::string& text, std::string_view origin) {
  const nlohmann::json doc = parse_json(text, origin);
  const Eigen::Index dim_in = require_dim(doc, "dim_in", origin);
  const Eigen::Index dim_out = require_dim(doc, "dim_out", origin);
  const auto& kraus_json = require_field(doc, "kraus", origin);
  if (!kraus_json.is_array() || kraus_json.empty()) {
    throw ParseError(std::string(origin) + ": field 'kraus' must be a nonempty array");
  }
  std::vector<Eigen::MatrixXcd> kraus;
  kraus.reserve(kraus_json.size());
  for (const auto& k : kraus_json) {
    kraus.push_back(parse_matrix(k, dim_out, dim_in, origin));
  }
  try {
    return Channel(dim_in, dim_out, std::move(kraus));
  } catch (const std::exception& e) {
    throw ParseError(std::string(origin) + ": " + e.what());
  }
}

ParsedState parse_state_text(const std::string& text, std::string_view origin) {
  const nlohmann::json doc = parse_json(text, origin);
  const Eigen::Index dim = require_dim(doc, "dim", origin);
  const Eigen::MatrixXcd m = parse_matrix(require_field(doc, "matrix", origin), dim, dim, origin);
  std::optional<BipartiteShape> shape;
  if (doc.contains("shape")) {
    const auto& sj = doc.at("shape");
    BipartiteShape s;
    s.dim_a = require_dim(sj, "dim_a", origin);
    s.dim_b = require_dim(sj, "dim_b", origin);
    if (s.total() != dim) {
      throw ParseError(std::string(origin) + ": shape " + std::to_string(s.dim_a) + "x" +
                       std::to_string(s.dim_b) + " does not factor dim " + std::to_string(dim));
    }
    shape = s;
  }
  try {
    return ParsedState{DensityMatrix(m), shape};
  } catch (const std::exception& e) {
    throw ParseError(std::string(origin) + ": " + e.what());
  }
}

Channel load_channel_file(const std::string& path) {
  return parse_channel_text(read_text(path), path);
}

ParsedState load_state_file(const std::string& path) {
  return parse_state_text(read_text(path), path);
}

}  // namespace entrobound::io
