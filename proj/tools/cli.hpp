// Copyright 2026 The qtwist Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qtw::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kIntegrity = 2, kCostCap = 3 };

// Runs one command line (args[0] is the program name). Normal output goes to
// out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qtw::cli
