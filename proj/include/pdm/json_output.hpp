// Copyright 2026 The pdm-polar Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include <json.hpp>

namespace pdm::io {

using Json = nlohmann::ordered_json;

/// Deterministic serialisation: insertion key order, two-space indent, every
/// floating-point number as %.17g. Non-finite numbers become null.
std::string dump(const Json& value);

/// %.17g, or "" for NaN/inf.
std::string format_double(double value);

}  // namespace pdm::io
