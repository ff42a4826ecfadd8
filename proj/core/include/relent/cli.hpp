// Copyright 2026 The Relent Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace relent {

// Command-line entry point; args excludes the program name. Returns 0 on
// success, 1 on invalid input (bad flags, malformed documents, violated
// preconditions), 2 on internal errors.
int run_cli(const std::vector<std::string>& args);

}  // namespace relent
