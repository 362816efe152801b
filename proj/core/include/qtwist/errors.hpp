// Copyright 2026 The qtwist Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#pragma once

#include <stdexcept>

namespace qtw {

// An internal consistency check failed (for example a broken functional
// equation). Mapped to exit code 2 by the CLI.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A job exceeds the configured cost cap. Mapped to exit code 3.
class CostCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qtw
