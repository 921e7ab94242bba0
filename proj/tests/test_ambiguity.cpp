// Copyright 2026 The pdm-polar Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "pdm/ambiguity.hpp"
#include "pdm/error.hpp"

using namespace pdm;

namespace {

struct Expected {
  OrderingName name;
  const char* token;
  double xi;
  double bracket;
  double c27;
};

// Exact rational values (frozen from an independent fraction-arithmetic run).
constexpr Expected kTable[] = {
    {OrderingName::GoraWilliams, "gora-williams", 2.0, 1.0, 1.5},
    {OrderingName::BenDanielDuke, "bendaniel-duke", 0.0, 0.0, 0.0},
    {OrderingName::ZhuKroemer, "zhu-kroemer", 1.5, 0.5, 1.0},
    {OrderingName::LiKuhn, "li-kuhn", 1.0, 0.5, 0.75},
    {OrderingName::MustafaMazharimousavi, "mustafa-mazharimousavi", 0.875, 0.375, 0.625},
};

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::ConfigError;
}

}  // namespace

TEST_CASE("named orderings: parameters, kernels, tokens") {
  for (const auto& row : kTable) {
    CAPTURE(row.token);
    const auto a = named_ordering(row.name);
    const auto p = exact_parameters(row.name);
    CHECK(a.alpha() == p[0].value());
    CHECK(a.beta() == p[1].value());
    CHECK(a.gamma() == p[2].value());
    CHECK(a.alpha() + a.beta() + a.gamma() == -1.0);
    CHECK(xi(a) == row.xi);
    CHECK(bracket(a) == row.bracket);
    CHECK(constraint27_value(a.alpha(), a.beta(), a.gamma()) == row.c27);
    CHECK(token(row.name) == row.token);
    CHECK(parse_ordering(row.token) == a);
    CHECK(ordering_token(a) == row.token);
    CHECK(match_named(a) == row.name);
  }
}

TEST_CASE("constraint gate selects only the quarter-half-quarter ordering") {
  int accepted = 0;
  for (const auto name : kNamedOrderings) {
    if (check_constraint27(named_ordering(name))) {
      ++accepted;
      CHECK(name == OrderingName::MustafaMazharimousavi);
    }
  }
  CHECK(accepted == 1);
  // Off by more than the 1e-12 tolerance.
  CHECK_FALSE(check_constraint27(make_ambiguity(-0.25 + 1e-6, -0.5 - 1e-6, -0.25)));
}

TEST_CASE("make_ambiguity enforces the sum") {
  CHECK_NOTHROW(make_ambiguity(-0.3, -0.4, -0.3));
  CHECK_NOTHROW(make_ambiguity(-0.3, -0.4, -0.3 + 5e-13));
  CHECK(kind_of([] { make_ambiguity(0.0, 0.0, 0.0); }) == ErrorKind::ConstraintViolation);
  CHECK(kind_of([] { make_ambiguity(-0.3, -0.4, -0.3 + 1e-9); }) ==
        ErrorKind::ConstraintViolation);
}

TEST_CASE("custom tokens") {
  const auto a = parse_ordering("custom:-0.2,-0.6,-0.2");
  CHECK(a.alpha() == doctest::Approx(-0.2));
  CHECK(a.beta() == doctest::Approx(-0.6));
  CHECK_FALSE(match_named(a).has_value());
  // Round trip through the %.17g token.
  CHECK(parse_ordering(ordering_token(a)) == a);
  // A custom triple equal to a named one prints as the name.
  CHECK(ordering_token(parse_ordering("custom:0,-1,0")) == "bendaniel-duke");

  CHECK(kind_of([] { parse_ordering("weyl"); }) == ErrorKind::ConfigError);
  CHECK(kind_of([] { parse_ordering("custom:1,2"); }) == ErrorKind::ConfigError);
  CHECK(kind_of([] { parse_ordering("custom:a,b,c"); }) == ErrorKind::ConfigError);
  CHECK(kind_of([] { parse_ordering("custom:1,1,1"); }) == ErrorKind::ConstraintViolation);
}

TEST_CASE("swap leaves xi and bracket unchanged") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const double al = u(rng);
    const double be = u(rng);
    const auto a = make_ambiguity(al, be, -1.0 - al - be);
    const auto s = a.swapped();
    CHECK(s.alpha() == a.gamma());
    CHECK(s.swapped() == a);
    CHECK(xi(s) == xi(a));
    CHECK(bracket(s) == bracket(a));
  }
}

TEST_CASE("kernels are constexpr") {
  static_assert(bracket_value(0.0, -1.0, 0.0) == 0.0);
  static_assert(xi_value(-1.0, 0.0, 0.0) == 2.0);
  static_assert(exact_parameters(OrderingName::LiKuhn)[1].value() == -0.5);
}
