// Copyright 2026 The pdm-polar Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>

namespace pdm::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInternal = 1;
inline constexpr int kConfigError = 2;
inline constexpr int kDomainError = 3;
inline constexpr int kToleranceExceeded = 4;
inline constexpr int kNoRoot = 5;

/// Entry point of the pdm-polar tool. Results go to `out` (or --out), errors
/// to `err` as a JSON object {"error": KIND, "message": TEXT}.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pdm::cli
