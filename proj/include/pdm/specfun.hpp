// Copyright 2026 The pdm-polar Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace pdm::specfun {

/// Bessel order nu = twice_order / 2. Only integer and half-integer orders.
class BesselOrder {
 public:
  /// Throws Error(DomainError) for negative twice_order.
  explicit BesselOrder(int twice_order);

  static BesselOrder integer(int n) { return BesselOrder(2 * n); }
  static BesselOrder half_odd(int k) { return BesselOrder(2 * k + 1); }  // k + 1/2

  int twice_order() const noexcept { return twice_order_; }
  double value() const noexcept { return 0.5 * twice_order_; }
  bool is_integer() const noexcept { return twice_order_ % 2 == 0; }

 private:
  int twice_order_;
};

/// Gamma function via a Lanczos approximation (g = 7, 9 terms), with the
/// reflection formula below 1/2. Throws Error(PoleError) at 0, -1, -2, ...
double gamma_fn(double x);

/// J_nu(x) for x >= 0, absolute error <= 1e-10 on [0, 50].
///
/// Integer orders: power series for small x, Miller's downward recurrence
/// normalised by J_0 + 2 sum J_2k = 1 otherwise. Half-integer orders: the
/// closed trigonometric forms (upward recurrence from J_{1/2}, J_{3/2}) when
/// x exceeds the order, power series below.
double bessel_j(BesselOrder nu, double x);

/// Associated Laguerre polynomial L_n^(alpha)(x) by the three-term recurrence.
double laguerre_assoc(int n, double alpha, double x);

}  // namespace pdm::specfun
