// Copyright 2026 The pdm-polar Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pdm/ambiguity.hpp"
#include "pdm/eigensolve.hpp"
#include "pdm/separation.hpp"
#include "pdm/specfun.hpp"

namespace pdm::models {

struct QuantumNumbers {
  int n_rho = 0;  // radial, >= 0
  int m = 0;      // magnetic
};

/// Throws Error(DomainError) for n_rho < 0.
QuantumNumbers make_quantum_numbers(int n_rho, int m);

enum class Provenance { ClosedForm, Numeric };

std::string_view to_string(Provenance p);

struct SpectrumRecord {
  QuantumNumbers qn;
  double lambda = 0.0;
  double energy_closed = 0.0;
  Provenance provenance = Provenance::ClosedForm;
  std::optional<double> energy_numeric;
  std::optional<double> delta;       // |numeric - closed|
  std::optional<double> rel_delta;   // delta / |closed|
  std::optional<double> convergence; // Richardson estimate of the numeric value
  std::optional<bool> within_tolerance;
  /// Set on radial quantisation checks, which do not involve m (qn.m is 0
  /// and carries no meaning there).
  std::optional<double> ell;
  std::optional<AmbiguitySet> ordering;

  double energy() const {
    return provenance == Provenance::Numeric && energy_numeric ? *energy_numeric
                                                                : energy_closed;
  }
};

struct SolverOptions {
  eigensolve::Index n_points = 4000;
  std::optional<double> rho_max;  // default per model
  double tol = 1e-4;              // relative
  unsigned threads = 0;           // 0: hardware concurrency
};

inline constexpr double kCoulombRhoMax = 60.0;

/// Oscillator-like truncation radius 12/sqrt(a).
double oscillator_rho_max(double a_param);

// Closed forms for the flat angular profile f = 1.

/// (m^2 - lambda)/2 - bracket(a)
double flat_energy(const AmbiguitySet& a, int m, double lambda);

/// (b - n_rho - 1)^2 - 1, with b = 1/omega. Needs b > n_rho + 1.
double coulomb_lambda(double b, int n_rho);

/// 1/2 [m^2 - (b - n_rho - 1)^2 + 1] - bracket(a)
double coulomb_energy(const AmbiguitySet& a, double b, QuantumNumbers qn);

/// (d/a - 2 n_rho - 1)^2 - 1. Needs a > 0 and d/a > 2 n_rho + 1.
double oscillator_lambda(double a_param, double d, int n_rho);

/// 1/2 [m^2 - (d/a - 2 n_rho - 1)^2 + 1] - bracket(a)
double oscillator_energy(const AmbiguitySet& a, double a_param, double d,
                         QuantumNumbers qn);

// Closed form against finite differences.

/// Radial Coulomb-like check for one state: the n_rho-th eigenvalue of
/// -U'' + [(l^2 - 1/4)/rho^2 - 2/rho] U = eps U against the quantisation
/// eps = -omega^2, omega = 1/(n_rho + l + 1).
SpectrumRecord coulomb_state(double ell, int n_rho, const SolverOptions& opts = {});

/// Radial oscillator-like check for one state: the n_rho-th eigenvalue of
/// -U'' + [(l^2 - 1/4)/rho^2 + a^2 rho^2 / 4] U = d U against
/// d = a (2 n_rho + l + 1).
SpectrumRecord oscillator_state(double a_param, double ell, int n_rho,
                                const SolverOptions& opts = {});

/// coulomb_state for n_rho = 0..n_rho_max with l = b - n_rho - 1.
std::vector<SpectrumRecord> verify_coulomb(double b, int n_rho_max,
                                           const SolverOptions& opts = {});

/// oscillator_state for n_rho = 0..n_rho_max with l = d/a - 2 n_rho - 1.
std::vector<SpectrumRecord> verify_oscillator(double a_param, double d, int n_rho_max,
                                              const SolverOptions& opts = {});

bool all_within_tolerance(const std::vector<SpectrumRecord>& records);

// cos^2 toy model with V~ = -rho^2/2 (V0 = 1, k = 1).

/// J_n(rho)/rho. Throws Error(DomainError) for rho <= 0.
double toy_radial_solution(specfun::BesselOrder n, double rho);

struct ZeroZetaSpectrum {
  std::vector<SpectrumRecord> records;
  std::string boundary_note;
};

/// E = m^2/2 at lambda = -3/4 for |m| <= m_max, each record carrying the
/// eigenvalue of -1/2 chi'' on a periodic q-circle of length 2pi.
ZeroZetaSpectrum toy_zero_zeta_spectrum(int m_max, const SolverOptions& opts = {});

struct ScanOptions {
  eigensolve::Index n_points = 2000;
  double wall_offset = 1e-3;  // walls at q = +-(1 - wall_offset)
  int eigen_index = 0;
  int curve_samples = 41;
};

struct ScanResult {
  double lambda = 0.0;
  double residual = 0.0;
  /// E(lambda*) with the walls at half the offset, minus E(lambda*).
  double wall_sensitivity = 0.0;
  std::vector<std::pair<double, double>> curve;  // (lambda, E)
};

/// The eigen_index-th eigenvalue of -1/2 chi'' + W_eff chi on the confined
/// q-interval, as a function of lambda.
double confined_angular_eigenvalue(const AmbiguitySet& a, double lambda,
                                   const ScanOptions& opts = {});

/// Finds lambda in the range where the confined angular eigenvalue equals the
/// target, by bisection on the first bracketing segment of a sampled curve.
/// Throws NoRootError (carrying the curve) when nothing is bracketed.
ScanResult heun_regime_scan(const AmbiguitySet& a, double energy_target,
                            Interval lambda_range, const ScanOptions& opts = {});

enum class DegeneracyReason { PlusMinusM, AlphaGammaSwap, EqualBracket };

std::string_view to_string(DegeneracyReason r);

struct DegeneracyGroup {
  double energy = 0.0;
  std::vector<std::size_t> members;  // indices into the input records
  std::vector<DegeneracyReason> reasons;
};

struct DegeneracyReport {
  std::vector<DegeneracyGroup> groups;  // ascending energy; singletons included
};

/// Groups records whose energies agree within 1e-9 (relative above 1).
/// Throws Error(DomainError) on empty input.
DegeneracyReport degeneracy_report(const std::vector<SpectrumRecord>& records);

}  // namespace pdm::models
