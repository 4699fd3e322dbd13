// Copyright The entrobound Authors
// SPDX-License-Identifier: Apache-2.0

#include "entrobound/cli.hpp"

int main(int argc, char** argv) { return entrobound::run_cli(argc, argv); }
