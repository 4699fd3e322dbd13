// Copyright The entrobound Authors
// SPDX-License-Identifier: Apache-2.0
//
// Report serialization and file formats.  Every JSON report document is an
// envelope {schema_version, kind, log_base, kernel_backend, tolerances,
// seed, payload}: the tolerance set in effect and the kernel backend that
// produced the numbers ride along, so a report is auditable on its own.
// Sweep and probe reports re-parse losslessly.  Input decks (channels and
// states) are JSON with complex entries as [re, im] pairs, matrices
// row-major; parse failures carry origin:line:column.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entrobound/channels.hpp"
#include "entrobound/lab.hpp"
#include "entrobound/roofs.hpp"

namespace entrobound::io {

// Raised for malformed input files; the message starts with
// "origin:line:col:" when a location is known, "origin:" otherwise.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Locale-independent rendering with 12 significant digits (CSV cells).
std::string format12(double v);

// Full report documents: pretty-printed JSON envelope, trailing newline.
// The sweep document's kind distinguishes the measure ("verify-simplex",
// "verify-matrix", or an injection label).
std::string sweep_report_document(const SweepReport& rep, std::string_view kind);
std::string probe_report_document(const ProbeReport& rep);
// `concurrence_run` attaches a companion concurrence minimization to an
// entanglement-of-formation report, together with the coefficient bound
// derived from its value.
std::string bound_report_document(const BoundReport& rep,
                                  const BoundReport* concurrence_run = nullptr);

// Lossless inverses for the two report kinds above (round-trip identity).
// The returned pair carries the payload struct and the envelope kind.
std::pair<SweepReport, std::string> parse_sweep_report(const std::string& text);
ProbeReport parse_probe_report(const std::string& text);

// CSV renderings with a header row; 12 significant digits per cell.
std::string fig1_csv(const std::vector<Fig1Row>& rows);
std::string fig2_csv(const std::vector<Fig2Row>& rows);

// Whole-file text I/O.  Writes go to a sibling temp file first and rename
// into place, so readers never observe a partial report.
std::string read_text(const std::string& path);
void write_text_atomic(const std::string& path, std::string_view content);

// Input decks.  A channel file is {dim_in, dim_out, kraus: [matrix...]};
// a state file is {dim, matrix, shape?: {dim_a, dim_b}} with
// dim_a*dim_b = dim.  Both validate through the library constructors.
struct ParsedState {
  DensityMatrix state;
  std::optional<BipartiteShape> shape;
};

Channel parse_channel_text(const std::string& text, std::string_view origin);
ParsedState parse_state_text(const std::string& text, std::string_view origin);
Channel load_channel_file(const std::string& path);
ParsedState load_state_file(const std::string& path);

}  // namespace entrobound::io
