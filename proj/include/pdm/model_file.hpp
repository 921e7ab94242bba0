// Copyright 2026 The pdm-polar Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Model description files (JSON):
//
//   {
//     "f": "flat" | "cos2" | {"tabulated": {"phi": [], "f": [], "fp": [], "fpp": []}},
//     "potential": {"power_well": {"v0": V0, "k": K}}
//                | {"coulomb_like": {"omega": W}}
//                | {"oscillator_like": {"a": A, "d": D}}
//                | {"tabulated": {"rho": [], "v": []}},
//     "ordering": "bendaniel-duke" | ... | "custom:A,B,G",
//     "lambda": L            (optional)
//   }
//
// Unknown keys are rejected.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "pdm/separation.hpp"

namespace pdm::io {

struct ModelSpec {
  SeparableModel model;
  std::optional<double> lambda;
};

/// Throws Error(ConfigError) on malformed JSON or schema violations and
/// Error(DomainError) on out-of-range parameters.
ModelSpec parse_model(std::string_view text);

/// Reads and parses a file. Unreadable files are a ConfigError.
ModelSpec load_model(const std::filesystem::path& path);

}  // namespace pdm::io
