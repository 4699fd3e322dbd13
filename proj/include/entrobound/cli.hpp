// Copyright The entrobound Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line surface.  One command per process:
//
//   verify                     random sweeps of the entropy bound
//   figures fig1|fig2          CSV data for the two illustration grids
//   conjecture concavity|ek-monotone   numerical probes
//   bounds min-output-entropy|ef|holevo   roof-based channel bounds
//
// Exit codes: 0 success / no violation, 1 a violation or counterexample was
// found (the report is still written), 2 usage or input error.

#pragma once

namespace entrobound {

int run_cli(int argc, const char* const* argv);

}  // namespace entrobound
