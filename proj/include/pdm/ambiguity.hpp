// Copyright 2026 The pdm-polar Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace pdm {

/// von Roos ordering-ambiguity parameters and the scalar combinations of
/// them consumed by the effective potentials and energy formulas.
///
/// The kinetic operator is
///   T = -1/4 { m^g grad m^b . grad m^a + m^a grad m^b . grad m^g }
/// with a + b + g = -1. Nothing here decides which ordering is "right".

inline constexpr double kVonRoosTolerance = 1e-12;

struct Rational {
  std::int64_t num;
  std::int64_t den;

  constexpr double value() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
};

enum class OrderingName {
  GoraWilliams,
  BenDanielDuke,
  ZhuKroemer,
  LiKuhn,
  MustafaMazharimousavi,
};

inline constexpr std::array<OrderingName, 5> kNamedOrderings = {
    OrderingName::GoraWilliams, OrderingName::BenDanielDuke,
    OrderingName::ZhuKroemer, OrderingName::LiKuhn,
    OrderingName::MustafaMazharimousavi};

/// Validated (alpha, beta, gamma) triple. Immutable after construction.
class AmbiguitySet {
 public:
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double gamma() const noexcept { return gamma_; }

  /// The same triple with alpha and gamma exchanged.
  AmbiguitySet swapped() const noexcept { return {gamma_, beta_, alpha_}; }

  friend bool operator==(const AmbiguitySet&, const AmbiguitySet&) = default;

 private:
  AmbiguitySet(double alpha, double beta, double gamma) noexcept
      : alpha_(alpha), beta_(beta), gamma_(gamma) {}

  friend AmbiguitySet make_ambiguity(double, double, double);

  double alpha_;
  double beta_;
  double gamma_;
};

/// Throws Error(ConstraintViolation) when |alpha + beta + gamma + 1| > 1e-12.
AmbiguitySet make_ambiguity(double alpha, double beta, double gamma);

/// Exact (alpha, beta, gamma) of a named ordering.
constexpr std::array<Rational, 3> exact_parameters(OrderingName name) {
  switch (name) {
    case OrderingName::GoraWilliams: return {{{-1, 1}, {0, 1}, {0, 1}}};
    case OrderingName::BenDanielDuke: return {{{0, 1}, {-1, 1}, {0, 1}}};
    case OrderingName::ZhuKroemer: return {{{-1, 2}, {0, 1}, {-1, 2}}};
    case OrderingName::LiKuhn: return {{{0, 1}, {-1, 2}, {-1, 2}}};
    case OrderingName::MustafaMazharimousavi:
      return {{{-1, 4}, {-1, 2}, {-1, 4}}};
  }
  return {{{0, 1}, {-1, 1}, {0, 1}}};
}

AmbiguitySet named_ordering(OrderingName name);

/// CLI token, e.g. "mustafa-mazharimousavi".
std::string_view token(OrderingName name);

/// Accepts a named token or "custom:ALPHA,BETA,GAMMA". Unknown or malformed
/// tokens raise Error(ConfigError); a custom triple off the constraint raises
/// Error(ConstraintViolation).
AmbiguitySet parse_ordering(std::string_view text);

/// Named token if the set equals a named ordering exactly, else "custom:...".
std::string ordering_token(const AmbiguitySet& a);

std::optional<OrderingName> match_named(const AmbiguitySet& a);

// Raw kernels, unconstrained. The AmbiguitySet overloads below forward here.

template <typename Scalar>
constexpr Scalar xi_value(Scalar alpha, Scalar beta, Scalar gamma) {
  return alpha * (alpha - Scalar(1)) + gamma * (gamma - Scalar(1)) -
         beta * (beta + Scalar(1));
}

/// alpha^2 + gamma^2 - beta(beta+1): the flat-angular W~ and the energy shift
/// common to every flat-profile spectrum.
template <typename Scalar>
constexpr Scalar bracket_value(Scalar alpha, Scalar beta, Scalar gamma) {
  return alpha * alpha + gamma * gamma - beta * (beta + Scalar(1));
}

template <typename Scalar>
constexpr Scalar constraint27_value(Scalar alpha, Scalar beta, Scalar gamma) {
  const Scalar half = Scalar(1) / Scalar(2);
  return alpha * (alpha - half) + gamma * (gamma - half) -
         beta * (beta + Scalar(1));
}

inline double xi(const AmbiguitySet& a) {
  return xi_value(a.alpha(), a.beta(), a.gamma());
}

inline double bracket(const AmbiguitySet& a) {
  return bracket_value(a.alpha(), a.beta(), a.gamma());
}

/// True iff alpha(alpha-1/2) + gamma(gamma-1/2) - beta(beta+1) = 5/8 within
/// 1e-12, the extra condition under which the cos^2 toy model's angular
/// effective potential vanishes identically at lambda = -3/4.
bool check_constraint27(const AmbiguitySet& a);

}  // namespace pdm
