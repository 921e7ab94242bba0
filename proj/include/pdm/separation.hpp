// Copyright 2026 The pdm-polar Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Separable mass/potential ansatz in plane polar coordinates,
//
//   M(rho, phi) = g(rho) f(phi),  g(rho) = rho^-2,   V(rho, phi) = V~(rho) / f(phi),
//
// and the two decoupled 1D problems it produces:
//
//   radial:   -U'' + [(3/4 + lambda)/rho^2 + 2 V~(rho)/rho^2] U = 0,  R = rho^-3/2 U
//   angular:  -1/2 chi''(q) + W_eff(q) chi(q) = E chi(q),
//             q' = sqrt(f),  Phi = f^1/4 chi(q(phi)).

#include <Eigen/Core>

#include <complex>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "pdm/ambiguity.hpp"

namespace pdm {

/// Below this value of f(phi) the angular effective potential is treated as
/// divergent and evaluation is refused.
inline constexpr double kMassGuard = 1e-8;

struct MassSample {
  double f;
  double df;   // d f / d phi
  double d2f;  // d^2 f / d phi^2
};

/// Periodic table of f, f', f'' on phi_i = i * 2pi/n. Derivatives are supplied
/// by the caller and checked against centred differences of f.
struct MassTable {
  std::vector<double> phi;
  std::vector<double> f;
  std::vector<double> fp;
  std::vector<double> fpp;
};

class AngularMassProfile {
 public:
  enum class Kind { Flat, CosSquared, Tabulated };

  static AngularMassProfile flat() { return AngularMassProfile(Kind::Flat); }
  static AngularMassProfile cos_squared() { return AngularMassProfile(Kind::CosSquared); }
  /// Throws Error(ConfigError) when the table is malformed (fewer than 16
  /// samples, non-uniform or non-periodic grid, derivatives inconsistent with
  /// centred differences beyond max(1e-3, h^2) relative).
  static AngularMassProfile tabulated(MassTable table);

  Kind kind() const noexcept { return kind_; }
  const MassTable& table() const noexcept { return table_; }

  /// f and its derivatives at phi. No positivity check.
  MassSample at(double phi) const;

  /// Smallest value f takes over a period.
  double min_over_period() const;

 private:
  explicit AngularMassProfile(Kind kind) : kind_(kind) {}

  Kind kind_;
  MassTable table_;
};

struct PowerWell {
  double v0;
  int k;
};
struct CoulombLike {
  double omega;
};
struct OscillatorLike {
  double a;
  double d;
};
struct RadialTable {
  std::vector<double> rho;
  std::vector<double> v;
};

/// V~(rho). Factories validate the parameter ranges and throw
/// Error(DomainError) on violation.
class RadialPotential {
 public:
  using Params = std::variant<PowerWell, CoulombLike, OscillatorLike, RadialTable>;

  static RadialPotential power_well(double v0, int k);
  static RadialPotential coulomb_like(double omega);
  static RadialPotential oscillator_like(double a, double d);
  static RadialPotential tabulated(RadialTable table);

  const Params& params() const noexcept { return params_; }

  double operator()(double rho) const;

 private:
  explicit RadialPotential(Params params) : params_(std::move(params)) {}

  Params params_;
};

/// The complete problem. g(rho) = rho^-2 is implied and not representable
/// otherwise.
struct SeparableModel {
  AngularMassProfile f;
  RadialPotential v;
  AmbiguitySet ordering;
};

using RealFunction = std::function<double(double)>;

struct Interval {
  double lo;
  double hi;
};

struct RadialProblem {
  RealFunction effective_potential;
  double lambda;
  Interval domain;
};

enum class AngularBoundary {
  Periodic,
  ConfinedByDivergence,
  // W_eff vanishes identically and the reduced equation carries no wall.
  Unconfined,
};

struct AngularProblem {
  RealFunction effective_potential;
  Interval domain;
  AngularBoundary boundary;
};

/// Sampled real function.
struct Samples {
  Eigen::VectorXd x;
  Eigen::VectorXd values;
};

struct AngularSamples {
  Eigen::VectorXd phi;
  Eigen::VectorXcd values;
  /// Set where cos(phi) < 0 for the cos^2 profile: there the global q = sin(phi)
  /// map runs backwards and f^1/4 = |cos phi|^1/2 differs from sqrt(cos phi)
  /// by a phase.
  std::vector<bool> off_principal_branch;
};

struct Zeta {
  double zeta1;
  double zeta2;
};

/// W~(phi): what W(rho, phi) collapses to once M = rho^-2 f(phi).
/// Throws Error(MassVanishes) if f(phi) <= 0.
double w_tilde(const AngularMassProfile& f, const AmbiguitySet& a, double phi);

/// Throws Error(DomainError) unless 0 < lo < hi.
RadialProblem radial_problem(const SeparableModel& m, double lambda, Interval domain);

/// R_i = rho_i^-3/2 U_i.
Samples radial_to_R(const Samples& u);

/// q(phi) = integral_0^phi sqrt(f). Throws Error(MassVanishes) if f vanishes
/// on the path.
double pct_map(const AngularMassProfile& f, double phi);

/// Angular effective potential, expanded form:
///   (f'^2 / 32 f^3)(7 - 8 xi) - (f'' / 8 f^2)(1 + 2(alpha+gamma))
///     - (xi + alpha + gamma + lambda/2) / f.
/// Throws Error(MassVanishes) where f < 1e-8.
double w_eff(const AngularMassProfile& f, const AmbiguitySet& a, double lambda,
             double phi);

/// Coefficients of W_eff = (zeta1 q^2 - zeta2)/(1 - q^2)^2 for f = cos^2.
Zeta zeta_coefficients(const AmbiguitySet& a, double lambda);

/// Throws Error(UnsupportedProfile) for tabulated profiles that vanish.
AngularProblem angular_problem(const SeparableModel& m, double lambda);

/// Phi(phi_i) = f(phi_i)^1/4 chi(q(phi_i)). For cos^2 the map q = sin(phi)
/// is used on the whole circle. Throws Error(MassVanishes) where f < 1e-8.
AngularSamples angular_wavefunction_recompose(
    const AngularMassProfile& f,
    const std::function<std::complex<double>(double)>& chi,
    std::span<const double> phis);

}  // namespace pdm
