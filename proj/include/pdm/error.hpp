// Copyright 2026 The pdm-polar Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pdm {

enum class ErrorKind {
  ConstraintViolation,
  MassVanishes,
  UnsupportedProfile,
  PoleError,
  DomainError,
  PotentialSingular,
  ConvergenceFailure,
  NoRoot,
  ConfigError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConstraintViolation: return "ConstraintViolation";
    case ErrorKind::MassVanishes: return "MassVanishes";
    case ErrorKind::UnsupportedProfile: return "UnsupportedProfile";
    case ErrorKind::PoleError: return "PoleError";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::PotentialSingular: return "PotentialSingular";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::NoRoot: return "NoRoot";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

/// Base of every error raised by the library. The kind drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by the (E, lambda) scan when the target energy is not bracketed.
/// Carries the sampled curve so callers can still report it.
class NoRootError : public Error {
 public:
  NoRootError(const std::string& message,
              std::vector<std::pair<double, double>> curve)
      : Error(ErrorKind::NoRoot, message), curve_(std::move(curve)) {}

  const std::vector<std::pair<double, double>>& curve() const noexcept {
    return curve_;
  }

 private:
  std::vector<std::pair<double, double>> curve_;
};

}  // namespace pdm
