// Copyright 2026 The pdm-polar Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pdm/error.hpp"
#include "pdm/specfun.hpp"

using namespace pdm;
using namespace pdm::specfun;

namespace {

bool close(double got, double want, double rel) {
  return std::fabs(got - want) <= rel * std::max(1.0, std::fabs(want));
}

// Reference values from a 30-digit arbitrary-precision evaluation.
struct Ref {
  int twice;
  double x;
  double value;
};

constexpr Ref kBessel[] = {
    {0, 1.0, 0.76519768655796655},    {2, 2.5, 0.49709410246427404},
    {10, 10.0, -0.23406152818679364}, {4, 30.0, 0.078451246073265349},
    {0, 50.0, 0.055812327669251815},  {20, 3.0, 1.2928351645715884e-5},
    {6, 0.01, 2.0833203125325522e-8}, {40, 45.0, 0.0047633437900312991},
    {1, 0.3, 0.43049351732812456},    {5, 0.3, 0.0026053018556586675},
    {3, 7.0, -0.19905171329249355},   {9, 20.0, 0.18011143018984586},
    {1, 1e-3, 0.025231321014980941},
};

}  // namespace

TEST_CASE("gamma function") {
  CHECK(close(gamma_fn(0.5), std::sqrt(std::numbers::pi), 1e-13));
  CHECK(close(gamma_fn(5.0), 24.0, 1e-13));
  CHECK(close(gamma_fn(-0.5), -3.5449077018110321, 1e-13));
  CHECK(close(gamma_fn(0.1), 9.5135076986687313, 1e-13));
  CHECK(close(gamma_fn(-2.5), -0.94530872048294188, 1e-13));
  CHECK(std::fabs(gamma_fn(10.3) / 716430.68906237641 - 1.0) < 1e-13);
  for (double pole : {0.0, -1.0, -4.0}) {
    try {
      gamma_fn(pole);
      FAIL("expected PoleError");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::PoleError);
    }
  }
}

TEST_CASE("Bessel J against reference values") {
  for (const auto& r : kBessel) {
    CAPTURE(r.twice);
    CAPTURE(r.x);
    CHECK(std::fabs(bessel_j(BesselOrder(r.twice), r.x) - r.value) <= 1e-12);
  }
  CHECK(bessel_j(BesselOrder::integer(0), 0.0) == 1.0);
  CHECK(bessel_j(BesselOrder::integer(3), 0.0) == 0.0);
  CHECK(bessel_j(BesselOrder::half_odd(0), 0.0) == 0.0);
}

TEST_CASE("Bessel J against the standard library on a dense grid") {
  // std::cyl_bessel_j serves as an independent oracle here only.
  double worst = 0.0;
  for (int twice = 0; twice <= 12; ++twice) {
    for (double x = 0.05; x <= 50.0; x += 0.0731) {
      const double want = std::cyl_bessel_j(0.5 * twice, x);
      worst = std::max(worst, std::fabs(bessel_j(BesselOrder(twice), x) - want));
    }
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("half-integer closed forms") {
  for (double x = 0.1; x <= 30.0; x += 0.01) {
    const double j_half = std::sqrt(2.0 / (std::numbers::pi * x)) * std::sin(x);
    REQUIRE(std::fabs(bessel_j(BesselOrder::half_odd(0), x) - j_half) <= 1e-12);
    const double j_3half =
        std::sqrt(2.0 / (std::numbers::pi * x)) * (std::sin(x) / x - std::cos(x));
    REQUIRE(std::fabs(bessel_j(BesselOrder::half_odd(1), x) - j_3half) <= 1e-12);
  }
}

TEST_CASE("Bessel order and argument validation") {
  CHECK(BesselOrder::half_odd(2).value() == 2.5);
  CHECK_FALSE(BesselOrder::half_odd(2).is_integer());
  CHECK(BesselOrder::integer(3).is_integer());
  CHECK_THROWS_AS(BesselOrder(-1), Error);
  CHECK_THROWS_AS(bessel_j(BesselOrder::integer(0), -1.0), Error);
}

TEST_CASE("associated Laguerre") {
  CHECK(close(laguerre_assoc(3, 0.5, 2.0), -0.89583333333333333, 1e-14));
  CHECK(laguerre_assoc(0, 1.0, 5.0) == 1.0);
  CHECK(close(laguerre_assoc(5, 2.0, 3.5), 2.20390625, 1e-14));
  CHECK(close(laguerre_assoc(1, -0.5, 1.0), -0.5, 1e-14));
  // Integer alpha against the standard library.
  for (int n = 0; n < 12; ++n) {
    for (unsigned m = 0; m < 4; ++m) {
      for (double x : {0.0, 0.7, 3.3, 9.0}) {
        CHECK(close(laguerre_assoc(n, m, x), std::assoc_laguerre(n, m, x), 1e-12));
      }
    }
  }
  CHECK_THROWS_AS(laguerre_assoc(-1, 0.0, 1.0), Error);
  CHECK_THROWS_AS(laguerre_assoc(2, -1.0, 1.0), Error);
}
