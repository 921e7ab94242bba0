// Copyright 2026 The pdm-polar Authors
// SPDX-License-Identifier: Apache-2.0

#include "pdm/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "pdm/error.hpp"

namespace pdm::specfun {

BesselOrder::BesselOrder(int twice_order) : twice_order_(twice_order) {
  if (twice_order < 0) {
    throw Error(ErrorKind::DomainError,
                "Bessel order must be non-negative, got twice_order=" +
                    std::to_string(twice_order));
  }
}

double gamma_fn(double x) {
  using std::numbers::pi;
  if (x <= 0.0 && x == std::floor(x)) {
    throw Error(ErrorKind::PoleError,
                "gamma function pole at x=" + std::to_string(x));
  }
  if (x < 0.5) {
    return pi / (std::sin(pi * x) * gamma_fn(1.0 - x));
  }
  static constexpr std::array<double, 9> kLanczos = {
      0.99999999999980993,     676.5203681218851,
      -1259.1392167224028,     771.32342877765313,
      -176.61502916214059,     12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6,
      1.5056327351493116e-7};
  constexpr double g = 7.0;
  const double z = x - 1.0;
  double series = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    series += kLanczos[i] / (z + static_cast<double>(i));
  }
  const double t = z + g + 0.5;
  // t^(z+1/2) split in two to postpone overflow near x ~ 170.
  const double half_power = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * pi) * half_power * (half_power * std::exp(-t)) *
         series;
}

namespace {

// sum_k (-1)^k (x/2)^(2k+nu) / (k! Gamma(k+nu+1))
double bessel_series(double nu, double x) {
  const double half_x = 0.5 * x;
  const double q = half_x * half_x;
  double term = std::pow(half_x, nu) / gamma_fn(nu + 1.0);
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= -q / (static_cast<double>(k) * (static_cast<double>(k) + nu));
    sum += term;
    if (std::fabs(term) <= 1e-17 * std::fabs(sum) && k > half_x) break;
  }
  return sum;
}

double bessel_integer_miller(int n, double x) {
  constexpr double kRescale = 1e250;
  const double two_over_x = 2.0 / x;
  const double top = std::max(static_cast<double>(n), x);
  int start = static_cast<int>(top + 50.0 + 2.0 * std::sqrt(top));
  if (start % 2 != 0) ++start;

  double j_next = 0.0;   // J_{k+1}
  double j_curr = 1.0;   // J_k
  double even_sum = 0.0; // sum of J_{2k}, k >= 1
  double wanted = 0.0;
  for (int k = start; k > 0; --k) {
    const double j_prev = k * two_over_x * j_curr - j_next;  // J_{k-1}
    j_next = j_curr;
    j_curr = j_prev;
    if (std::fabs(j_curr) > kRescale) {
      j_curr /= kRescale;
      j_next /= kRescale;
      even_sum /= kRescale;
      wanted /= kRescale;
    }
    const int index = k - 1;
    if (index == n) wanted = j_curr;
    if (index > 0 && index % 2 == 0) even_sum += j_curr;
  }
  const double norm = j_curr + 2.0 * even_sum;  // J_0 + 2 sum J_2k = 1
  return wanted / norm;
}

double bessel_half_upward(int k, double x) {
  using std::numbers::pi;
  const double scale = std::sqrt(2.0 / (pi * x));
  double j_lo = scale * std::sin(x);  // J_{1/2}
  if (k == 0) return j_lo;
  double j_hi = scale * (std::sin(x) / x - std::cos(x));  // J_{3/2}
  for (int i = 1; i < k; ++i) {
    const double nu = i + 0.5;
    const double next = (2.0 * nu / x) * j_hi - j_lo;
    j_lo = j_hi;
    j_hi = next;
  }
  return j_hi;
}

}  // namespace

double bessel_j(BesselOrder nu, double x) {
  if (!(x >= 0.0)) {
    throw Error(ErrorKind::DomainError,
                "bessel_j requires x >= 0, got " + std::to_string(x));
  }
  const double order = nu.value();
  if (x == 0.0) return nu.twice_order() == 0 ? 1.0 : 0.0;

  if (nu.is_integer()) {
    const int n = nu.twice_order() / 2;
    if (x <= 8.0) return bessel_series(order, x);
    return bessel_integer_miller(n, x);
  }
  const int k = (nu.twice_order() - 1) / 2;
  if (k == 0 || x > order) return bessel_half_upward(k, x);
  return bessel_series(order, x);
}

double laguerre_assoc(int n, double alpha, double x) {
  if (n < 0 || !(alpha > -1.0)) {
    throw Error(ErrorKind::DomainError,
                "laguerre_assoc requires n >= 0 and alpha > -1");
  }
  double prev = 1.0;
  if (n == 0) return prev;
  double curr = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k) {
    const double next =
        ((2.0 * k + 1.0 + alpha - x) * curr - (k + alpha) * prev) / (k + 1.0);
    prev = curr;
    curr = next;
  }
  return curr;
}

}  // namespace pdm::specfun
